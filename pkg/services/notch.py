import logging
import math
from collections import defaultdict
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from functools import partial

import numpy as np
from pydantic import BaseModel
from scipy import optimize, stats
from scipy.ndimage import gaussian_filter1d

from core.config import settings
from core.enums import FitStage, QiConvention
from core.units import Planck, dbm_to_watt, watt_to_dbm
from schemas.common import RecordMetadata
from schemas.notch import (
    AggregatedFit,
    CircleGeometry,
    NotchFitResult,
    NotchParams,
    NotchUncertainties,
    PhaseFit,
    PhotonMetrics,
    PowerSweepRecord,
    PowerSweepRow,
    ResonatorSummary,
    ResonatorSummaryRow,
)
from schemas.traces import FrequencyTrace
from services.exceptions import (
    ConfigurationError,
    DegenerateGeometryError,
    DomainError,
    FitConvergenceError,
    FitQualityError,
)
from services.synth import s21_model
from services.traces import window_trace
from services.utils import require_positive

logger = logging.getLogger(__name__)

DELAY_TOLERANCE = 1e-15
LM_TOLERANCE = 1e-12
GRID_SEARCH_POINTS = 41
AGGREGATED_FIELDS = ("f_r", "q_loaded", "q_external", "q_internal", "phi", "delay", "amplitude", "alpha", "tan_delta")


class DelayEstimate(BaseModel):
    delay: float
    sigma: float
    residual: float


@contextmanager
def fit_stage(stage: FitStage) -> Iterator[None]:
    try:
        yield
    except (DegenerateGeometryError, DomainError) as exc:
        exc.detail = f"{stage.value}: {exc.detail}"
        exc.args = (exc.detail,)
        raise


def wrap_angle(angle: float) -> float:
    return float((angle + np.pi) % (2.0 * np.pi) - np.pi)


def fit_circle(points: Sequence[complex] | np.ndarray) -> CircleGeometry:
    """Taubin algebraic circle fit."""
    z = np.asarray(points, dtype=complex)
    if z.size < 3:
        raise DegenerateGeometryError(f"circle fit needs at least 3 points, got {z.size}")
    centroid = z.mean()
    x = z.real - centroid.real
    y = z.imag - centroid.imag
    zz = x * x + y * y
    zz_mean = zz.mean()
    if not zz_mean > 0:
        raise DegenerateGeometryError("all points coincide")
    z0 = (zz - zz_mean) / (2.0 * math.sqrt(zz_mean))
    _, _, vt = np.linalg.svd(np.column_stack([z0, x, y]), full_matrices=False)
    v = vt[-1]
    if abs(v[0]) <= 1e-12 * np.max(np.abs(v)):
        raise DegenerateGeometryError("points are collinear")
    a0 = v[0] / (2.0 * math.sqrt(zz_mean))
    a3 = -zz_mean * a0
    center = complex(-v[1] / a0 / 2.0, -v[2] / a0 / 2.0) + centroid
    radius = math.sqrt(v[1] ** 2 + v[2] ** 2 - 4.0 * a0 * a3) / abs(a0) / 2.0
    distances = np.abs(z - center) - radius
    return CircleGeometry(center=center, radius=radius, residual=float(np.sqrt(np.mean(distances**2))))


def _circle_cost(frequencies: np.ndarray, samples: np.ndarray, delay: float) -> float:
    corrected = samples * np.exp(2j * np.pi * (frequencies - frequencies.mean()) * delay)
    try:
        circle = fit_circle(corrected)
    except DegenerateGeometryError:
        return math.inf
    distances = np.abs(corrected - circle.center) - circle.radius
    return float(np.dot(distances, distances))


def estimate_delay(*, trace: FrequencyTrace, delay_hint: float | None = None) -> DelayEstimate:
    f = trace.frequencies
    z = trace.samples / np.max(np.abs(trace.samples))
    sigma = 0.0
    if delay_hint is None:
        edge = max(2, int(math.ceil(settings.delay_edge_fraction * f.size)))
        phase = np.unwrap(np.angle(z))
        index = np.r_[0:edge, f.size - edge : f.size]
        line = stats.linregress(f[index] - f.mean(), phase[index])
        guess = -line.slope / (2.0 * np.pi)
        sigma = float(line.stderr) / (2.0 * np.pi)
    else:
        guess = delay_hint

    half_window = 0.5 / trace.span
    grid = np.linspace(guess - half_window, guess + half_window, settings.delay_grid_points)
    costs = np.array([_circle_cost(f, z, value) for value in grid])
    best = int(np.argmin(costs))
    centre = float(grid[best])
    step = float(grid[1] - grid[0])

    def cost(offset: float) -> float:
        return _circle_cost(f, z, centre + offset)

    # offsets from the best grid point keep the bracket tolerance absolute
    result = optimize.minimize_scalar(
        cost,
        bounds=(-step, step),
        method="bounded",
        options={"xatol": DELAY_TOLERANCE, "maxiter": 500},
    )
    offset, residual = (float(result.x), float(result.fun)) if result.fun <= costs[best] else (0.0, float(costs[best]))
    offset, residual = _parabolic_polish(cost, offset, residual, 1e-3 * step)
    delay = centre + offset
    logger.debug("delay guess=%.6g refined=%.6g", guess, delay)
    return DelayEstimate(delay=delay, sigma=sigma, residual=residual)


def _parabolic_polish(cost, x: float, value: float, h: float, rounds: int = 2) -> tuple[float, float]:
    """Vertex steps of a three-point parabola; the circle residual is quadratic near its minimum."""
    for _ in range(rounds):
        left, right = cost(x - h), cost(x + h)
        curvature = left - 2.0 * value + right
        if not curvature > 0:
            break
        candidate = x - 0.5 * h * (right - left) / curvature
        candidate_value = cost(candidate)
        if not candidate_value <= value:
            break
        x, value = candidate, candidate_value
    return x, value


def phase_model(frequencies: np.ndarray, theta0: float, q_loaded: float, f_r: float) -> np.ndarray:
    return theta0 + 2.0 * np.arctan(2.0 * q_loaded * (1.0 - frequencies / f_r))


def _phase_jacobian(x: np.ndarray, frequencies: np.ndarray) -> np.ndarray:
    theta0, q_loaded, f_r = x
    g = 2.0 * q_loaded * (1.0 - frequencies / f_r)
    slope = 2.0 / (1.0 + g * g)
    return np.column_stack(
        [
            np.ones_like(frequencies),
            slope * 2.0 * (1.0 - frequencies / f_r),
            slope * 2.0 * q_loaded * frequencies / f_r**2,
        ]
    )


def _phase_guess(frequencies: np.ndarray, phase: np.ndarray) -> np.ndarray:
    smoothed = gaussian_filter1d(phase, sigma=max(1.0, frequencies.size / 400.0), mode="nearest")
    slope = np.abs(np.gradient(smoothed, frequencies))
    peak = int(np.argmax(slope))
    half = slope[peak] / 2.0
    left = peak
    while left > 0 and slope[left - 1] >= half:
        left -= 1
    right = peak
    while right < slope.size - 1 and slope[right + 1] >= half:
        right += 1
    step = float(np.median(np.diff(frequencies)))
    fwhm = max(frequencies[right] - frequencies[left], step)
    f_r = frequencies[peak]
    return np.array([smoothed[peak], f_r / fwhm, f_r])


def _grid_search_guess(frequencies: np.ndarray, phase: np.ndarray) -> np.ndarray:
    step = float(np.median(np.diff(frequencies)))
    span = frequencies[-1] - frequencies[0]
    centre = frequencies.mean()
    f_candidates = np.linspace(frequencies[0], frequencies[-1], GRID_SEARCH_POINTS)
    q_candidates = np.geomspace(centre / span, centre / (2.0 * step), GRID_SEARCH_POINTS)
    best = (math.inf, None)
    for f_r in f_candidates:
        for q_loaded in q_candidates:
            shape = phase_model(frequencies, 0.0, q_loaded, f_r)
            offset = phase - shape
            theta0 = float(np.angle(np.mean(np.exp(1j * offset))))
            theta0 += 2.0 * np.pi * np.round(np.mean(offset - theta0) / (2.0 * np.pi))
            cost = float(np.sum((offset - theta0) ** 2))
            if cost < best[0]:
                best = (cost, np.array([theta0, q_loaded, f_r]))
    return best[1]


def _run_phase_lm(frequencies: np.ndarray, phase: np.ndarray, x0: np.ndarray):
    return optimize.least_squares(
        lambda x: phase_model(frequencies, *x) - phase,
        x0,
        jac=lambda x: _phase_jacobian(x, frequencies),
        method="lm",
        x_scale="jac",
        xtol=LM_TOLERANCE,
        ftol=LM_TOLERANCE,
        gtol=LM_TOLERANCE,
        max_nfev=settings.fit_max_iterations,
    )


def _phase_fit_ok(result, frequencies: np.ndarray) -> bool:
    theta0, q_loaded, f_r = result.x
    return (
        result.status > 0
        and q_loaded > 0
        and frequencies[0] <= f_r <= frequencies[-1]
        and np.all(np.isfinite(result.x))
    )


def fit_phase(
    *,
    frequencies: Sequence[float] | np.ndarray,
    centered: Sequence[complex] | np.ndarray,
    guess: Sequence[float] | None = None,
) -> PhaseFit:
    """Fit theta(f) = theta0 + 2 arctan(2 Q_L (1 - f / f_r)) to circle-centered data."""
    f = np.asarray(frequencies, dtype=float)
    z = np.asarray(centered, dtype=complex)
    order = np.argsort(f)
    f, z = f[order], z[order]
    phase = np.unwrap(np.angle(z))

    x0 = np.asarray(guess, dtype=float) if guess is not None else _phase_guess(f, phase)
    result = _run_phase_lm(f, phase, x0)
    if guess is None and not _phase_fit_ok(result, f):
        logger.debug("phase fit from slope guess failed (status=%s); grid search fallback", result.status)
        result = _run_phase_lm(f, phase, _grid_search_guess(f, phase))
    if not _phase_fit_ok(result, f):
        raise FitConvergenceError(
            FitStage.PHASE.value,
            f"no convergence within {settings.fit_max_iterations} evaluations ({result.message})",
            last_iterate=result.x.tolist(),
        )

    theta0, q_loaded, f_r = (float(value) for value in result.x)
    dof = max(f.size - 3, 1)
    residual_variance = float(np.dot(result.fun, result.fun)) / dof
    jac = _phase_jacobian(result.x, f)
    covariance = np.linalg.pinv(jac.T @ jac) * residual_variance
    return PhaseFit(
        f_r=f_r,
        q_loaded=q_loaded,
        theta0=theta0,
        covariance=covariance.tolist(),
        residual_rms=math.sqrt(residual_variance),
        evaluations=int(result.nfev),
    )


def photon_metrics(*, f_r: float, q_loaded: float, q_external: float, power_w: float) -> PhotonMetrics:
    """Mean photon number for probe power at the sample, and the power giving one photon."""
    require_positive(f_r=f_r, q_loaded=q_loaded, q_external=q_external, power_w=power_w)
    single = single_photon_power(f_r=f_r, q_loaded=q_loaded, q_external=q_external)
    return PhotonMetrics(
        power_w=power_w,
        mean_photon_number=power_w / single,
        single_photon_power_w=single,
        single_photon_power_dbm=float(watt_to_dbm(single)),
    )


def single_photon_power(*, f_r: float, q_loaded: float, q_external: float) -> float:
    return math.pi * Planck * f_r**2 * q_external / q_loaded**2


def extract_notch(
    *,
    trace: FrequencyTrace,
    delay_hint: float | None = None,
    attenuation_db: float = 0.0,
) -> NotchFitResult:
    f = trace.frequencies
    warnings: list[str] = []

    with fit_stage(FitStage.DELAY):
        delay = estimate_delay(trace=trace, delay_hint=delay_hint)
    corrected = trace.samples * np.exp(2j * np.pi * f * delay.delay)

    with fit_stage(FitStage.CIRCLE):
        circle = fit_circle(corrected)
    with fit_stage(FitStage.PHASE):
        phase = fit_phase(frequencies=f, centered=corrected - circle.center)

    beta = phase.theta0 - math.pi
    off_resonant = circle.center + circle.radius * complex(math.cos(beta), math.sin(beta))
    amplitude = abs(off_resonant)
    alpha = math.atan2(off_resonant.imag, off_resonant.real)
    start = np.array(
        [
            phase.f_r,
            phase.q_loaded,
            phase.q_loaded * amplitude / (2.0 * circle.radius),
            beta - alpha,
            amplitude,
            alpha,
            delay.delay,
        ]
    )
    refined = _refine_notch(f, trace.samples, start)
    f_r, q_loaded, q_external, phi, amplitude, alpha, tau = (float(value) for value in refined.x)
    phi, alpha = wrap_angle(phi), wrap_angle(alpha)

    internal_loss = 1.0 / q_loaded - math.cos(phi) / q_external
    if not internal_loss > 0:
        raise FitQualityError(
            FitStage.EXTRACTION.value,
            "derived internal quality factor is not positive",
            diagnostics={"q_loaded": q_loaded, "q_external": q_external, "phi": phi},
        )
    q_internal = 1.0 / internal_loss
    if math.cos(phi) < 0:
        warnings.append("negative real part of 1/Q_e: circle rotated beyond 90 degrees")

    params = NotchParams(
        f_r=f_r,
        q_loaded=q_loaded,
        q_external=q_external,
        phi=phi,
        amplitude=amplitude,
        alpha=alpha,
        delay=tau,
    )
    window = trace.span * q_loaded / f_r
    if delay_hint is None and window < settings.min_window_linewidths:
        warnings.append(f"trace spans only {window:.2f} linewidths; electric delay may be ambiguous")

    sigma = _uncertainties(refined, params, q_internal)
    model = s21_model(f, params)
    residual_norm = float(np.sqrt(np.mean(np.abs(trace.samples - model) ** 2)))

    photons = None
    if trace.power_dbm is not None:
        photons = photon_metrics(
            f_r=f_r,
            q_loaded=q_loaded,
            q_external=q_external,
            power_w=float(dbm_to_watt(trace.power_dbm - attenuation_db)),
        )
    for message in warnings:
        logger.warning("%s: %s", trace.label or "trace", message)
    return NotchFitResult(
        metadata=RecordMetadata(
            conventions={
                "q_internal": QiConvention.DIAMETER_CORRECTED.value,
                "uncertainty": "complex_least_squares_covariance",
            }
        ),
        label=trace.label,
        params=params,
        q_internal=q_internal,
        tan_delta=internal_loss,
        sigma=sigma,
        circle=circle,
        residual_norm=residual_norm,
        window_linewidths=window,
        power_dbm=trace.power_dbm,
        temperature_k=trace.temperature_k,
        photons=photons,
        warnings=warnings,
    )


def _notch_residuals(x: np.ndarray, frequencies: np.ndarray, samples: np.ndarray) -> np.ndarray:
    f_r, q_loaded, q_external, phi, amplitude, alpha, delay = x
    environment = amplitude * np.exp(1j * (alpha - 2.0 * np.pi * frequencies * delay))
    denominator = 1.0 + 2j * q_loaded * (frequencies / f_r - 1.0)
    difference = environment * (1.0 - q_loaded / q_external * np.exp(1j * phi) / denominator) - samples
    return np.concatenate([difference.real, difference.imag])


def _notch_jacobian(x: np.ndarray, frequencies: np.ndarray, samples: np.ndarray) -> np.ndarray:
    f_r, q_loaded, q_external, phi, amplitude, alpha, delay = x
    environment = amplitude * np.exp(1j * (alpha - 2.0 * np.pi * frequencies * delay))
    denominator = 1.0 + 2j * q_loaded * (frequencies / f_r - 1.0)
    rotation = np.exp(1j * phi)
    coupling = q_loaded / q_external * rotation
    model = environment * (1.0 - coupling / denominator)
    columns = np.column_stack(
        [
            -environment * coupling * 2j * q_loaded * frequencies / (f_r**2 * denominator**2),
            -environment * rotation / (q_external * denominator**2),
            environment * coupling / (q_external * denominator),
            -1j * environment * coupling / denominator,
            model / amplitude,
            1j * model,
            -2j * np.pi * frequencies * model,
        ]
    )
    return np.vstack([columns.real, columns.imag])


def _refine_notch(frequencies: np.ndarray, samples: np.ndarray, start: np.ndarray):
    """Least squares of the full complex model, started from the circle-fit estimate."""
    result = optimize.least_squares(
        _notch_residuals,
        start,
        jac=_notch_jacobian,
        args=(frequencies, samples),
        method="lm",
        x_scale="jac",
        xtol=LM_TOLERANCE,
        ftol=LM_TOLERANCE,
        gtol=LM_TOLERANCE,
        max_nfev=settings.fit_max_iterations,
    )
    f_r, q_loaded, q_external = result.x[:3]
    if result.status <= 0 or not (f_r > 0 and q_loaded > 0 and q_external > 0 and result.x[4] > 0):
        raise FitConvergenceError(
            FitStage.REFINE.value,
            f"no convergence within {settings.fit_max_iterations} evaluations ({result.message})",
            last_iterate=result.x.tolist(),
        )
    logger.debug("refined %d evaluations, cost %.3g", result.nfev, result.cost)
    return result


def _uncertainties(refined, params: NotchParams, q_internal: float) -> NotchUncertainties:
    dof = max(refined.fun.size - refined.x.size, 1)
    residual_variance = float(np.dot(refined.fun, refined.fun)) / dof
    jac = refined.jac
    covariance = np.linalg.pinv(jac.T @ jac) * residual_variance
    sigmas = np.sqrt(np.clip(np.diag(covariance), 0.0, None))
    # gradient of Q_i with respect to (Q_L, |Q_e|, phi)
    gradient = q_internal**2 * np.array(
        [
            1.0 / params.q_loaded**2,
            -math.cos(params.phi) / params.q_external**2,
            -math.sin(params.phi) / params.q_external,
        ]
    )
    block = covariance[np.ix_([1, 2, 3], [1, 2, 3])]
    return NotchUncertainties(
        f_r=float(sigmas[0]),
        q_loaded=float(sigmas[1]),
        q_external=float(sigmas[2]),
        q_internal=float(math.sqrt(max(gradient @ block @ gradient, 0.0))),
        phi=float(sigmas[3]),
        delay=float(sigmas[6]),
    )


def aggregate_fits(*, results: Sequence[NotchFitResult]) -> AggregatedFit:
    if len(results) < 2:
        raise ConfigurationError(f"aggregation needs at least 2 results, got {len(results)}")
    labels = {item.label for item in results}
    if len(labels) > 1:
        raise ConfigurationError(f"cannot aggregate fits of different resonators: {sorted(labels)}")
    table = {name: np.array([_field(item, name) for item in results]) for name in AGGREGATED_FIELDS}
    powers = {item.power_dbm for item in results}
    return AggregatedFit(
        label=labels.pop(),
        count=len(results),
        power_dbm=powers.pop() if len(powers) == 1 else None,
        mean={name: float(values[0] + (values - values[0]).mean()) for name, values in table.items()},
        # offsets from the first value keep identical inputs at zero spread
        spread={name: float((values - values[0]).std(ddof=1)) for name, values in table.items()},
    )


def _field(result: NotchFitResult, name: str) -> float:
    if name in ("q_internal", "tan_delta"):
        return getattr(result, name)
    return getattr(result.params, name)


def analyze_power_sweep(
    *,
    traces: Sequence[FrequencyTrace],
    attenuation_db: float = 0.0,
    workers: int = 1,
) -> PowerSweepRecord:
    if not traces:
        raise ConfigurationError("power sweep needs at least one trace")
    missing = [item.label or str(index) for index, item in enumerate(traces) if item.power_dbm is None]
    if missing:
        raise ConfigurationError(f"traces without power metadata: {missing}")
    labels = {item.label for item in traces}
    if len(labels) > 1:
        raise ConfigurationError(f"power sweep mixes resonators: {sorted(labels)}")

    results = fit_batch(traces=traces, attenuation_db=attenuation_db, workers=workers)
    by_power: dict[float, list[NotchFitResult]] = defaultdict(list)
    for result in results:
        by_power[result.power_dbm].append(result)

    rows = []
    for power in sorted(by_power):
        group = by_power[power]
        if len(group) > 1:
            summary = aggregate_fits(results=group)
            mean, spread = summary.mean, summary.spread
            q_i, q_i_sigma = mean["q_internal"], spread["q_internal"]
            q_e, q_e_sigma = mean["q_external"], spread["q_external"]
            q_l, f_r = mean["q_loaded"], mean["f_r"]
        else:
            only = group[0]
            q_i, q_i_sigma = only.q_internal, only.sigma.q_internal
            q_e, q_e_sigma = only.params.q_external, only.sigma.q_external
            q_l, f_r = only.params.q_loaded, only.params.f_r
        photons = photon_metrics(
            f_r=f_r, q_loaded=q_l, q_external=q_e, power_w=float(dbm_to_watt(power - attenuation_db))
        )
        rows.append(
            PowerSweepRow(
                power_dbm=power,
                n_photon=photons.mean_photon_number,
                q_i=q_i,
                q_i_sigma=q_i_sigma,
                q_e=q_e,
                q_e_sigma=q_e_sigma,
                tan_delta=1.0 / q_i,
                q_l=q_l,
                single_photon_power_dbm=photons.single_photon_power_dbm,
                count=len(group),
            )
        )
    return PowerSweepRecord(
        metadata=RecordMetadata(conventions={"attenuation_db": repr(attenuation_db)}),
        label=labels.pop(),
        rows=rows,
    )


def fit_batch(
    *,
    traces: Sequence[FrequencyTrace],
    attenuation_db: float = 0.0,
    workers: int = 1,
) -> list[NotchFitResult]:
    fit = partial(_extract_one, attenuation_db=attenuation_db)
    if workers <= 1 or len(traces) < 2:
        return [fit(item) for item in traces]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fit, traces))


def _extract_one(trace: FrequencyTrace, attenuation_db: float) -> NotchFitResult:
    return extract_notch(trace=trace, attenuation_db=attenuation_db)


def summarize_resonators(*, sweeps: Sequence[PowerSweepRecord]) -> ResonatorSummary:
    """Average internal quality factor across resonators at each probe power."""
    if not sweeps:
        raise ConfigurationError("no power sweeps to summarize")
    by_power: dict[float, list[float]] = defaultdict(list)
    for sweep in sweeps:
        for row in sweep.rows:
            by_power[row.power_dbm].append(row.q_i)
    rows = [
        ResonatorSummaryRow(
            power_dbm=power,
            mean_q_i=float(np.mean(values)),
            std_q_i=float(np.std(values, ddof=1)) if len(values) > 1 else 0.0,
            resonators=len(values),
        )
        for power, values in sorted(by_power.items())
    ]
    return ResonatorSummary(rows=rows, low_power_q_i=rows[0].mean_q_i, high_power_q_i=rows[-1].mean_q_i)


def split_multiplexed(
    *,
    trace: FrequencyTrace,
    f_guesses: Sequence[float],
    linewidths: float | None = None,
) -> list[FrequencyTrace]:
    """Window a multiplexed trace around each approximate resonance."""
    if not f_guesses:
        raise ConfigurationError("at least one resonance guess is required")
    guesses = sorted(f_guesses)
    if len(set(guesses)) != len(guesses):
        raise ConfigurationError("resonance guesses must be distinct")
    linewidths = settings.window_linewidths if linewidths is None else linewidths
    f = trace.frequencies
    bounds = [f[0]] + [(low + high) / 2.0 for low, high in zip(guesses, guesses[1:])] + [f[-1]]
    magnitude = np.abs(trace.samples)
    windows = []
    for index, guess in enumerate(guesses):
        lower, upper = bounds[index], bounds[index + 1]
        region = (f >= lower) & (f <= upper)
        width = _dip_width(f[region], magnitude[region])
        if width is not None:
            dip = f[region][int(np.argmin(magnitude[region]))]
            lower = max(lower, dip - linewidths * width)
            upper = min(upper, dip + linewidths * width)
        window = window_trace(trace=trace, f_min=lower, f_max=upper)
        windows.append(window.with_samples(window.samples, label=f"{trace.label}#{index}"))
    return windows


def _dip_width(frequencies: np.ndarray, magnitude: np.ndarray) -> float | None:
    if frequencies.size < 5:
        return None
    baseline = float(np.median(magnitude))
    dip = int(np.argmin(magnitude))
    half = (baseline + magnitude[dip]) / 2.0
    left = dip
    while left > 0 and magnitude[left - 1] <= half:
        left -= 1
    right = dip
    while right < magnitude.size - 1 and magnitude[right + 1] <= half:
        right += 1
    width = frequencies[right] - frequencies[left]
    return float(width) if width > 0 else None


def fit_multiplexed(
    *,
    trace: FrequencyTrace,
    f_guesses: Sequence[float],
    attenuation_db: float = 0.0,
    workers: int = 1,
) -> list[NotchFitResult]:
    windows = split_multiplexed(trace=trace, f_guesses=f_guesses)
    return fit_batch(traces=windows, attenuation_db=attenuation_db, workers=workers)
