"""Write example traces and datasets for trying out the command line."""

import logging
from pathlib import Path
from typing import TypedDict

import click
import numpy as np
import pandas as pd

from core.logs import configure_logging
from schemas.notch import NotchParams
from schemas.tls import TlsParams
from services.synth import compose_multiplexed, linewidth_grid, synthesize_trace
from services.tls import tls_frequency
from services.traces import write_table, write_trace

logger = logging.getLogger(__name__)


class SweepSeedPayload(TypedDict):
    power_dbm: float
    q_internal: float
    repeats: int


class ResonatorSeedPayload(TypedDict):
    label: str
    f_r: float
    q_external: float
    phi: float


RESONATORS: list[ResonatorSeedPayload] = [
    {"label": "A", "f_r": 290.5e6, "q_external": 5.0e4, "phi": 0.05},
    {"label": "F", "f_r": 450.7e6, "q_external": 3.0e4, "phi": -0.1},
]

# Q_i rises with power as TLS saturate; source power before ~80 dB of attenuation
SWEEP: list[SweepSeedPayload] = [
    {"power_dbm": -60.0, "q_internal": 4.0e4, "repeats": 2},
    {"power_dbm": -40.0, "q_internal": 6.0e4, "repeats": 2},
    {"power_dbm": -20.0, "q_internal": 1.2e5, "repeats": 2},
    {"power_dbm": 0.0, "q_internal": 2.0e5, "repeats": 2},
]


def loaded_q(q_internal: float, q_external: float, phi: float) -> float:
    return 1.0 / (1.0 / q_internal + np.cos(phi) / q_external)


def seed_sweeps(*, directory: Path, seed: int) -> int:
    written = 0
    for resonator in RESONATORS:
        for step in SWEEP:
            params = NotchParams(
                f_r=resonator["f_r"],
                q_loaded=loaded_q(step["q_internal"], resonator["q_external"], resonator["phi"]),
                q_external=resonator["q_external"],
                phi=resonator["phi"],
                amplitude=0.02,
                alpha=1.1,
                delay=38e-9,
            )
            grid = linewidth_grid(params=params, linewidths=8.0, points=1601)
            for repeat in range(step["repeats"]):
                trace = synthesize_trace(
                    params=params,
                    frequencies=grid,
                    noise_sigma=2e-4,
                    seed=seed + written,
                    power_dbm=step["power_dbm"],
                    temperature_k=0.025,
                    label=resonator["label"],
                )
                name = f"{resonator['label']}_{int(step['power_dbm']):+d}dBm_{repeat}.csv"
                write_trace(trace=trace, path=directory / name)
                written += 1
    return written


def seed_multiplexed(*, directory: Path, seed: int) -> None:
    params = [
        NotchParams(f_r=resonator["f_r"], q_loaded=2.0e4, q_external=resonator["q_external"], delay=38e-9)
        for resonator in RESONATORS
    ]
    grids = [linewidth_grid(params=item, linewidths=12.0, points=1201) for item in params]
    trace = compose_multiplexed(
        params=params, frequencies=np.concatenate(grids), noise_sigma=1e-3, seed=seed, label="feedline"
    )
    write_trace(trace=trace, path=directory / "multiplexed.csv")


def seed_temperature(*, directory: Path, seed: int) -> None:
    params = TlsParams(f0=450.7e6, delta0=3e-4)
    temperatures = np.linspace(0.025, 0.5, 20)
    rng = np.random.Generator(np.random.PCG64(seed))
    frequencies = tls_frequency(temperature=temperatures, params=params) + rng.normal(0.0, 1e3, temperatures.size)
    frame = pd.DataFrame(
        {"temperature_k": temperatures, "f_r_hz": frequencies, "sigma_f_hz": np.full(temperatures.size, 1e3)}
    )
    write_table(frame=frame, path=directory / "F_temperature.csv")


@click.command()
@click.argument("directory", type=click.Path(file_okay=False, path_type=Path), default=Path("examples_data"))
@click.option("--seed", type=int, default=0, show_default=True)
def main(directory: Path, seed: int) -> None:
    configure_logging("INFO")
    directory.mkdir(parents=True, exist_ok=True)
    count = seed_sweeps(directory=directory, seed=seed)
    seed_multiplexed(directory=directory, seed=seed)
    seed_temperature(directory=directory, seed=seed)
    logger.info("wrote %d sweep traces, a multiplexed trace and a temperature dataset to %s", count, directory)


if __name__ == "__main__":
    main()
