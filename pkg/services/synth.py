import logging
from collections.abc import Sequence

import numpy as np

from schemas.notch import NotchParams
from schemas.traces import FrequencyTrace
from services.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

RNG_ALGORITHM = "numpy.random.PCG64"


def environment_factor(frequencies: np.ndarray | float, *, amplitude: float, alpha: float, delay: float):
    f = np.asarray(frequencies, dtype=float)
    return amplitude * np.exp(1j * alpha) * np.exp(-2j * np.pi * f * delay)


def resonator_term(frequencies: np.ndarray | float, params: NotchParams):
    f = np.asarray(frequencies, dtype=float)
    coupling = params.q_loaded / params.q_external * np.exp(1j * params.phi)
    return 1.0 - coupling / (1.0 + 2j * params.q_loaded * (f / params.f_r - 1.0))


def s21_model(frequencies: np.ndarray | float, params: NotchParams):
    env = environment_factor(frequencies, amplitude=params.amplitude, alpha=params.alpha, delay=params.delay)
    return env * resonator_term(frequencies, params)


def linewidth_grid(*, params: NotchParams, linewidths: float = 5.0, points: int = 2001) -> np.ndarray:
    half_span = linewidths * params.linewidth
    return np.linspace(params.f_r - half_span, params.f_r + half_span, points)


def synthesize_trace(
    *,
    params: NotchParams,
    frequencies: Sequence[float] | np.ndarray,
    noise_sigma: float = 0.0,
    seed: int = 0,
    power_dbm: float | None = None,
    temperature_k: float | None = None,
    label: str = "",
) -> FrequencyTrace:
    if noise_sigma < 0:
        raise ConfigurationError(f"noise sigma must be non-negative, got {noise_sigma!r}")
    grid = np.asarray(frequencies, dtype=float)
    samples = s21_model(grid, params)
    if noise_sigma > 0:
        samples = samples + _complex_noise(grid.size, noise_sigma, seed)
    return FrequencyTrace(
        frequencies=grid,
        samples=samples,
        power_dbm=power_dbm,
        temperature_k=temperature_k,
        label=label,
        extra=_rng_metadata(noise_sigma, seed),
    )


def compose_multiplexed(
    *,
    params: Sequence[NotchParams],
    frequencies: Sequence[float] | np.ndarray,
    noise_sigma: float = 0.0,
    seed: int = 0,
    label: str = "",
) -> FrequencyTrace:
    """Cascade of notch terms under the environment factor of the first resonator."""
    if not params:
        raise ConfigurationError("at least one resonator is required")
    resonances = [item.f_r for item in params]
    if len(set(resonances)) != len(resonances):
        raise ConfigurationError("resonance frequencies must be distinct")
    reference = params[0]
    for item in params[1:]:
        if (item.amplitude, item.alpha, item.delay) != (reference.amplitude, reference.alpha, reference.delay):
            raise ConfigurationError("multiplexed resonators must share amplitude, alpha and delay")
    grid = np.asarray(frequencies, dtype=float)
    samples = environment_factor(grid, amplitude=reference.amplitude, alpha=reference.alpha, delay=reference.delay)
    for item in params:
        samples = samples * resonator_term(grid, item)
    if noise_sigma > 0:
        samples = samples + _complex_noise(grid.size, noise_sigma, seed)
    return FrequencyTrace(frequencies=grid, samples=samples, label=label, extra=_rng_metadata(noise_sigma, seed))


def _complex_noise(size: int, sigma: float, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    noise = rng.normal(0.0, sigma, size=(2, size))
    return noise[0] + 1j * noise[1]


def _rng_metadata(noise_sigma: float, seed: int) -> dict[str, str]:
    if noise_sigma <= 0:
        return {}
    return {
        "rng": RNG_ALGORITHM,
        "rng_seed": str(seed),
        "noise_sigma": repr(float(noise_sigma)),
    }
