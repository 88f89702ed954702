import logging
import math
from collections.abc import Sequence

import numpy as np
from scipy import stats

from core.enums import InductanceSource
from core.units import epsilon_0
from schemas.common import RecordMetadata
from schemas.cpw import CpwGeometry
from schemas.lumped import (
    CalibrationDataset,
    CalibrationRecord,
    CalibrationResidual,
    DesignRecord,
    LinearFitReport,
    LumpedModel,
    PpcSpec,
    PredictionInput,
    PredictionReport,
    PredictionRow,
)
from services.cpw import mode_wavelength, size_ratio, strip_lc, total_length
from services.exceptions import InfeasibleDesignError
from services.utils import require_positive, require_same_length

logger = logging.getLogger(__name__)

# Inductance implied by the bundled characterization table for the 2000 um strip.
CHARACTERIZED_INDUCTANCE = 1.0706e-9

RELATIVE_ERROR_CONVENTION = "(f_meas - f_pred) / f_meas"


def ppc_capacitance(*, spec: PpcSpec) -> float:
    return spec.c0 * spec.area


def c0_from_dielectric(*, eps_d: float, thickness: float) -> float:
    require_positive(eps_d=eps_d, thickness=thickness)
    return epsilon_0 * eps_d / thickness


def resonance_frequency(*, model: LumpedModel) -> float:
    return 1.0 / (2.0 * math.pi * math.sqrt(model.inductance * model.c_total))


def characteristic_impedance(*, model: LumpedModel) -> float:
    return math.sqrt(model.inductance / model.c_total)


def implied_capacitance(*, f: float, inductance: float) -> float:
    require_positive(f=f, inductance=inductance)
    return 1.0 / ((2.0 * math.pi * f) ** 2 * inductance)


def implied_inductance(*, f: float, c_total: float) -> float:
    require_positive(f=f, c_total=c_total)
    return 1.0 / ((2.0 * math.pi * f) ** 2 * c_total)


def required_area(*, f_target: float, inductance: float, c0: float, c_cpw: float) -> float:
    require_positive(f_target=f_target, inductance=inductance, c0=c0)
    if c_cpw < 0.0:
        raise InfeasibleDesignError(f"c_cpw must be non-negative, got {c_cpw!r}")
    c_total = implied_capacitance(f=f_target, inductance=inductance)
    if c_total <= c_cpw:
        raise InfeasibleDesignError(
            f"target {f_target:.6g} Hz needs C_total = {c_total:.6g} F, "
            f"which does not exceed the strip capacitance {c_cpw:.6g} F"
        )
    return (c_total - c_cpw) / c0


def calibrate_c0(*, data: CalibrationDataset, inductance: float, c_cpw: float) -> CalibrationRecord:
    """Fit capacitance per area with the strip capacitance held fixed.

    Frequency-vs-area data only identifies L*c0 and L*C_cpw, so L must be given.
    """
    require_positive(inductance=inductance, c_cpw=c_cpw)
    areas = np.array([row.area for row in data.rows])
    freqs = np.array([row.f_meas for row in data.rows])
    c_total = 1.0 / ((2.0 * np.pi * freqs) ** 2 * inductance)

    # regression through the fixed intercept c_cpw
    c0 = float(np.dot(areas, c_total - c_cpw) / np.dot(areas, areas))
    residual = c_total - c_cpw - c0 * areas
    dof = max(len(areas) - 1, 1)
    c0_sigma = float(math.sqrt(np.dot(residual, residual) / dof / np.dot(areas, areas)))

    line = stats.linregress(areas, c_total)
    line_fit = LinearFitReport(
        slope=float(line.slope),
        slope_sigma=float(line.stderr),
        intercept=float(line.intercept),
        intercept_sigma=float(line.intercept_stderr),
        r_squared=float(line.rvalue**2),
    )

    residuals = []
    for row, c_row in zip(data.rows, c_total):
        c_ppc = c0 * row.area
        f_fit = resonance_frequency(model=LumpedModel(inductance=inductance, c_ppc=c_ppc, c_cpw=c_cpw))
        residuals.append(
            CalibrationResidual(
                label=row.label,
                area=row.area,
                f_meas=row.f_meas,
                f_fit=f_fit,
                c_total=float(c_row),
                relative_residual=(row.f_meas - f_fit) / row.f_meas,
                c_cpw_ratio=c_cpw / c_ppc,
            )
        )
    logger.info("calibrated c0=%.6g F/m^2 +- %.2g over %d rows", c0, c0_sigma, len(areas))
    return CalibrationRecord(
        metadata=RecordMetadata(conventions={"intercept": "fixed_c_cpw"}),
        c0=c0,
        c0_sigma=c0_sigma,
        inductance=inductance,
        c_cpw=c_cpw,
        residuals=residuals,
        line_fit=line_fit,
    )


def prediction_report(
    *,
    designs: Sequence[PredictionInput],
    measured: Sequence[float] | None = None,
) -> PredictionReport:
    if measured is not None:
        require_same_length(designs=designs, measured=measured)
    rows = []
    for index, design in enumerate(designs):
        f_pred = resonance_frequency(model=design.model)
        f_meas = None if measured is None else float(measured[index])
        relative_error = None
        if f_meas is not None:
            require_positive(f_meas=f_meas)
            relative_error = 100.0 * (f_meas - f_pred) / f_meas
        ratio = None
        if design.total_length is not None:
            wavelength = mode_wavelength(f_r=f_meas or f_pred, eps_eff=design.eps_eff)
            ratio = size_ratio(l_tot=design.total_length, wavelength=wavelength)
        rows.append(
            PredictionRow(
                label=design.label,
                f_pred=f_pred,
                f_meas=f_meas,
                relative_error_percent=relative_error,
                impedance=characteristic_impedance(model=design.model),
                size_ratio=ratio,
            )
        )
    return PredictionReport(
        metadata=RecordMetadata(conventions={"relative_error": RELATIVE_ERROR_CONVENTION}),
        rows=rows,
    )


def design_tadpole(
    *,
    f_target: float,
    geom: CpwGeometry,
    c0: float,
    inductance: float | None = None,
    c_cpw: float | None = None,
) -> DesignRecord:
    analytic = strip_lc(geom=geom)
    notes = []
    if inductance is None:
        inductance = analytic.inductance
        source = InductanceSource.ANALYTIC
        notes.append(
            f"inductance from conformal mapping: {analytic.inductance * 1e9:.4f} nH; "
            f"characterized devices of this geometry imply {CHARACTERIZED_INDUCTANCE * 1e9:.4f} nH "
            f"({100.0 * (CHARACTERIZED_INDUCTANCE / analytic.inductance - 1.0):+.1f} %); "
            "pass an inductance override to design against measured devices"
        )
    else:
        require_positive(inductance=inductance)
        source = InductanceSource.OVERRIDE
        notes.append(
            f"inductance override {inductance * 1e9:.4f} nH differs from the analytic "
            f"{analytic.inductance * 1e9:.4f} nH by {100.0 * (inductance / analytic.inductance - 1.0):+.1f} %"
        )
    if c_cpw is None:
        c_cpw = analytic.capacitance

    area = required_area(f_target=f_target, inductance=inductance, c0=c0, c_cpw=c_cpw)
    model = LumpedModel(inductance=inductance, c_ppc=ppc_capacitance(spec=PpcSpec(area=area, c0=c0)), c_cpw=c_cpw)
    if not model.is_tadpole:
        notes.append("strip capacitance exceeds plate capacitance; lumped approximation is poor")
    f_check = resonance_frequency(model=model)
    l_tot = total_length(strip_length=geom.length, ppc_area=area)
    wavelength = mode_wavelength(f_r=f_check, eps_eff=geom.effective_permittivity)
    return DesignRecord(
        metadata=RecordMetadata(conventions={"ppc_shape": "square"}),
        target_frequency=f_target,
        area=area,
        inductance=inductance,
        inductance_source=source,
        analytic_inductance=analytic.inductance,
        c0=c0,
        c_ppc=model.c_ppc,
        c_cpw=c_cpw,
        c_total=model.c_total,
        frequency_check=f_check,
        impedance=characteristic_impedance(model=model),
        total_length=l_tot,
        wavelength=wavelength,
        size_ratio=size_ratio(l_tot=l_tot, wavelength=wavelength),
        notes=notes,
    )
