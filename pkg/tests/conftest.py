from pathlib import Path

import pytest

from schemas.cpw import CpwGeometry
from schemas.notch import NotchParams
from services.synth import linewidth_grid, synthesize_trace

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture
def characterization_path() -> Path:
    return DATA_DIR / "characterized_resonators.csv"


@pytest.fixture
def reference_geometry() -> CpwGeometry:
    return CpwGeometry(width=10e-6, gap=6e-6, length=2000e-6, eps_r=11.9)


@pytest.fixture
def notch_params() -> NotchParams:
    return NotchParams(
        f_r=500e6,
        q_loaded=5000.0,
        q_external=50000.0,
        phi=0.2,
        amplitude=0.8,
        alpha=1.0,
        delay=30e-9,
    )


@pytest.fixture
def notch_trace(notch_params):
    return synthesize_trace(
        params=notch_params,
        frequencies=linewidth_grid(params=notch_params, linewidths=5.0, points=2001),
        label="R1",
    )
