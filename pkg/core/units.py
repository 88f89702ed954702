import numpy as np
from scipy.constants import Boltzmann, Planck, epsilon_0, mu_0, speed_of_light

__all__ = [
    "Boltzmann",
    "Planck",
    "epsilon_0",
    "mu_0",
    "speed_of_light",
    "nm_to_m",
    "um_to_m",
    "um2_to_m2",
    "m2_to_um2",
    "ff_per_um2_to_si",
    "si_to_ff_per_um2",
    "nh_to_h",
    "pf_to_f",
    "mhz_to_hz",
    "dbm_to_watt",
    "watt_to_dbm",
]


def nm_to_m(value: float) -> float:
    return value * 1e-9


def um_to_m(value: float) -> float:
    return value * 1e-6


def um2_to_m2(value: float) -> float:
    return value * 1e-12


def m2_to_um2(value: float) -> float:
    return value * 1e12


def ff_per_um2_to_si(value: float) -> float:
    # 1 fF/um^2 = 1e-15 F / 1e-12 m^2
    return value * 1e-3


def si_to_ff_per_um2(value: float) -> float:
    return value * 1e3


def nh_to_h(value: float) -> float:
    return value * 1e-9


def pf_to_f(value: float) -> float:
    return value * 1e-12


def mhz_to_hz(value: float) -> float:
    return value * 1e6


def dbm_to_watt(power_dbm):
    return 1e-3 * np.power(10.0, np.asarray(power_dbm, dtype=float) / 10.0)


def watt_to_dbm(power_w):
    return 10.0 * np.log10(np.asarray(power_w, dtype=float) / 1e-3)
