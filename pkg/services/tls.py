import logging
import math
from collections.abc import Sequence

import numpy as np
from scipy import optimize

from core.config import settings
from core.enums import FitStage, TlsLogConvention
from core.units import Boltzmann, Planck
from schemas.common import RecordMetadata
from schemas.notch import NotchFitResult
from schemas.tls import (
    MIN_FIT_POINTS,
    LossTangentComparison,
    TemperatureDataset,
    TlsFitRecord,
    TlsParams,
    TlsResidual,
)
from services.exceptions import ConfigurationError, DomainError, FitConvergenceError, FitQualityError
from services.utils import require_positive

logger = logging.getLogger(__name__)

# B_2n / (2n) for n = 1..6
_ASYMPTOTIC_COEFFICIENTS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
)
_RECURRENCE_THRESHOLD = 10.0
DELTA_SCALE = 1e-4
TLS_TOLERANCE = 1e-15


def digamma(z):
    """Complex digamma: upward recurrence to |z| >= 10, then the asymptotic series."""
    values = np.array(z, dtype=complex, ndmin=1)
    poles = (values.imag == 0) & (values.real <= 0) & (values.real == np.round(values.real))
    if poles.any():
        raise DomainError(f"digamma has a pole at {values[poles][0].real:g}")

    shifted = values.copy()
    correction = np.zeros_like(values)
    small = np.abs(shifted) < _RECURRENCE_THRESHOLD
    while small.any():
        correction[small] -= 1.0 / shifted[small]
        shifted[small] += 1.0
        small = np.abs(shifted) < _RECURRENCE_THRESHOLD

    inverse_square = 1.0 / (shifted * shifted)
    series = np.zeros_like(shifted)
    for coefficient in reversed(_ASYMPTOTIC_COEFFICIENTS):
        series = (series + coefficient) * inverse_square
    result = np.log(shifted) - 0.5 / shifted - series + correction
    if np.ndim(z) == 0:
        return complex(result[0])
    return result


def _thermal_ratio(f0: float, temperature):
    return Planck * f0 / (Boltzmann * np.asarray(temperature, dtype=float))


def tls_frequency(*, temperature, params: TlsParams):
    """f_r(T) = f0 [1 + F delta0 / pi (Re psi(1/2 + hf0 / 2 pi i kT) - ln(hf0 / kT))]."""
    temperatures = np.asarray(temperature, dtype=float)
    if np.any(~(temperatures > 0)):
        raise DomainError("temperature must be positive")
    ratio = _thermal_ratio(params.f0, temperatures)
    psi = digamma(0.5 + ratio / (2j * np.pi))
    bracket = np.real(psi) - np.log(ratio)
    shift = params.filling_factor * params.delta0 / np.pi * bracket
    result = params.f0 * (1.0 + shift)
    return float(result) if np.ndim(temperature) == 0 else result


def tls_loss_tangent(*, temperature, f_r: float, delta0: float):
    temperatures = np.asarray(temperature, dtype=float)
    if np.any(~(temperatures > 0)):
        raise DomainError("temperature must be positive")
    require_positive(f_r=f_r)
    if delta0 < 0:
        raise DomainError(f"delta0 must be non-negative, got {delta0!r}")
    result = delta0 * np.tanh(Planck * f_r / (2.0 * Boltzmann * temperatures))
    return float(result) if np.ndim(temperature) == 0 else result


def fit_tls(*, data: TemperatureDataset, filling_factor: float = 1.0) -> TlsFitRecord:
    """Fit f0 and delta0 to frequency vs temperature; the filling factor stays fixed."""
    if len(data.points) < MIN_FIT_POINTS:
        raise ConfigurationError(
            f"TLS fit needs at least {MIN_FIT_POINTS} temperature points, got {len(data.points)}"
        )
    temperatures = np.array([point.temperature for point in data.points])
    frequencies = np.array([point.f_r for point in data.points])
    sigmas = [point.sigma_f for point in data.points]
    weighted = all(value is not None for value in sigmas)
    weights = 1.0 / np.array(sigmas) if weighted else np.ones_like(frequencies)

    base_frequency = float(frequencies[0])

    def model(x: np.ndarray) -> np.ndarray:
        params = TlsParams.model_construct(
            f0=x[0] * base_frequency, delta0=x[1] * DELTA_SCALE, filling_factor=filling_factor
        )
        return tls_frequency(temperature=temperatures, params=params)

    result = optimize.least_squares(
        lambda x: (model(x) - frequencies) * weights,
        np.array([1.0, 1.0]),
        method="lm",
        xtol=TLS_TOLERANCE,
        ftol=TLS_TOLERANCE,
        gtol=TLS_TOLERANCE,
        max_nfev=settings.fit_max_iterations,
    )
    if result.status <= 0:
        raise FitConvergenceError(
            FitStage.TLS.value,
            f"no convergence within {settings.fit_max_iterations} evaluations ({result.message})",
            last_iterate=[result.x[0] * base_frequency, result.x[1] * DELTA_SCALE],
        )
    f0 = float(result.x[0] * base_frequency)
    delta0 = float(result.x[1] * DELTA_SCALE)
    if delta0 < 0:
        raise FitQualityError(FitStage.TLS.value, "fitted delta0 is negative", diagnostics={"delta0": delta0})

    dof = max(frequencies.size - 2, 1)
    residual_variance = float(np.dot(result.fun, result.fun)) / dof
    covariance = np.linalg.pinv(result.jac.T @ result.jac) * residual_variance
    scales = np.array([base_frequency, DELTA_SCALE])
    sigma = np.sqrt(np.clip(np.diag(covariance), 0.0, None)) * scales

    params = TlsParams(f0=f0, delta0=delta0, filling_factor=filling_factor)
    fitted = tls_frequency(temperature=temperatures, params=params)
    residuals = [
        TlsResidual(temperature=float(t), f_r=float(f), f_fit=float(g), residual=float(f - g))
        for t, f, g in zip(temperatures, frequencies, fitted)
    ]
    relative_difference = (f0 - base_frequency) / base_frequency
    logger.info(
        "%s: f0=%.9g Hz delta0=%.4g (f0 vs base %.3g%%)",
        data.label or "tls",
        f0,
        delta0,
        100.0 * relative_difference,
    )
    return TlsFitRecord(
        metadata=RecordMetadata(
            conventions={
                "log_argument": TlsLogConvention.F0.value,
                "weights": "sigma_f" if weighted else "uniform",
            }
        ),
        label=data.label,
        params=params,
        f0_sigma=float(sigma[0]),
        delta0_sigma=float(sigma[1]),
        residual_rms=math.sqrt(float(np.mean((frequencies - fitted) ** 2))),
        evaluations=int(result.nfev),
        base_frequency=base_frequency,
        f0_relative_difference=relative_difference,
        residuals=residuals,
    )


def compare_loss_tangent(
    *, temperature: float, f_r: float, delta0: float, q_internal: float, label: str = ""
) -> LossTangentComparison:
    require_positive(q_internal=q_internal)
    predicted = tls_loss_tangent(temperature=temperature, f_r=f_r, delta0=delta0)
    measured = 1.0 / q_internal
    return LossTangentComparison(
        label=label,
        temperature=temperature,
        f_r=f_r,
        predicted=predicted,
        measured=measured,
        ratio=measured / predicted if predicted > 0 else math.inf,
    )


def compare_fits(*, record: TlsFitRecord, fits: Sequence[NotchFitResult]) -> TlsFitRecord:
    """Attach loss tangent comparisons for notch fits taken at known temperatures."""
    comparisons = []
    for fit in fits:
        if fit.temperature_k is None:
            raise ConfigurationError(f"notch fit {fit.label!r} has no temperature_k")
        comparisons.append(
            compare_loss_tangent(
                temperature=fit.temperature_k,
                f_r=fit.params.f_r,
                delta0=record.params.filling_factor * record.params.delta0,
                q_internal=fit.q_internal,
                label=fit.label,
            )
        )
    return record.model_copy(update={"comparisons": comparisons})
