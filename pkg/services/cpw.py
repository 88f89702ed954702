import logging
import math

from core.units import epsilon_0, mu_0, speed_of_light
from schemas.cpw import CpwGeometry, StripLC, TlineParams
from services.exceptions import DomainError
from services.utils import require_positive

logger = logging.getLogger(__name__)

AGM_TOLERANCE = 1e-14
AGM_MAX_ITERATIONS = 64


def ellipk(k: float) -> float:
    """Complete elliptic integral of the first kind K(k) for modulus k.

    K(k) = pi / (2 * AGM(1, sqrt(1 - k^2))).
    """
    if not math.isfinite(k) or k < 0.0 or k >= 1.0:
        raise DomainError(f"elliptic modulus must lie in [0, 1), got {k!r}")
    a = 1.0
    b = math.sqrt((1.0 - k) * (1.0 + k))
    for _ in range(AGM_MAX_ITERATIONS):
        if abs(a - b) <= AGM_TOLERANCE * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (a + b)


def line_params(*, geom: CpwGeometry) -> TlineParams:
    k0 = geom.modulus
    k0_prime = math.sqrt((1.0 - k0) * (1.0 + k0))
    ratio = ellipk(k0) / ellipk(k0_prime)
    eps_eff = geom.effective_permittivity
    capacitance = 4.0 * epsilon_0 * eps_eff * ratio
    inductance = mu_0 / (4.0 * ratio)
    return TlineParams(
        capacitance_per_length=capacitance,
        inductance_per_length=inductance,
        eps_eff=eps_eff,
        impedance=math.sqrt(inductance / capacitance),
        phase_velocity=1.0 / math.sqrt(inductance * capacitance),
    )


def strip_lc(*, geom: CpwGeometry) -> StripLC:
    params = line_params(geom=geom)
    return StripLC(
        inductance=params.inductance_per_length * geom.length,
        capacitance=params.capacitance_per_length * geom.length,
    )


def mode_wavelength(*, f_r: float, eps_eff: float) -> float:
    require_positive(f_r=f_r)
    if not eps_eff >= 1.0:
        raise DomainError(f"eps_eff must be >= 1, got {eps_eff!r}")
    return speed_of_light / (f_r * math.sqrt(eps_eff))


def size_ratio(*, l_tot: float, wavelength: float) -> float:
    require_positive(l_tot=l_tot, wavelength=wavelength)
    return l_tot / wavelength


def total_length(*, strip_length: float, ppc_area: float) -> float:
    """Strip length plus the side of a square plate of the given area."""
    require_positive(strip_length=strip_length, ppc_area=ppc_area)
    return strip_length + math.sqrt(ppc_area)


def quarter_wave_frequency(*, geom: CpwGeometry) -> float:
    return speed_of_light / (4.0 * geom.length * math.sqrt(geom.effective_permittivity))
