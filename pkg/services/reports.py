import json
import logging
from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "tadpole-toolkit"

import pandas as pd  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from pydantic import BaseModel  # noqa: E402

from core.units import m2_to_um2  # noqa: E402
from schemas.lumped import CalibrationRecord, DesignRecord  # noqa: E402
from schemas.notch import NotchFitResult, PowerSweepRecord, ResonatorSummary, ResonatorSummaryRow  # noqa: E402
from schemas.reports import ReportRecord  # noqa: E402
from schemas.tls import TlsFitRecord  # noqa: E402
from services.exceptions import TraceParseError  # noqa: E402
from services.notch import summarize_resonators  # noqa: E402
from services.traces import write_table  # noqa: E402

logger = logging.getLogger(__name__)

SVG_METADATA = {"Date": None, "Creator": "tadpole-toolkit"}

SWEEP_COLUMNS = ["power_dbm", "n_photon", "q_i", "q_i_sigma", "q_e", "q_e_sigma", "tan_delta"]

# Keys that identify each record type in a JSON document.
_RECORD_SIGNATURES: tuple[tuple[frozenset[str], type[BaseModel]], ...] = (
    (frozenset({"params", "circle", "sigma"}), NotchFitResult),
    (frozenset({"rows", "label"}), PowerSweepRecord),
    (frozenset({"params", "residuals", "base_frequency"}), TlsFitRecord),
    (frozenset({"c0", "residuals", "line_fit"}), CalibrationRecord),
    (frozenset({"target_frequency", "area"}), DesignRecord),
)


def load_records(*, paths: Sequence[Path | str]) -> list[BaseModel]:
    records = []
    for path in paths:
        path = Path(path)
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise TraceParseError(str(path), exc.lineno, exc.msg) from exc
        model = _detect(document)
        if model is None:
            raise TraceParseError(str(path), None, "not a recognized analysis record")
        records.append(model.model_validate(document))
    return records


def _detect(document: object) -> type[BaseModel] | None:
    if not isinstance(document, dict):
        return None
    keys = set(document)
    for signature, model in _RECORD_SIGNATURES:
        if signature <= keys:
            return model
    return None


def fit_table(records: Sequence[NotchFitResult]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "label": item.label,
                "power_dbm": item.power_dbm,
                "temperature_k": item.temperature_k,
                "f_r_hz": item.params.f_r,
                "f_r_sigma_hz": item.sigma.f_r,
                "q_loaded": item.params.q_loaded,
                "q_external": item.params.q_external,
                "q_internal": item.q_internal,
                "q_internal_sigma": item.sigma.q_internal,
                "phi_rad": item.params.phi,
                "delay_s": item.params.delay,
                "n_photon": item.photons.mean_photon_number if item.photons else None,
            }
            for item in records
        ]
    )


def sweep_table(records: Sequence[PowerSweepRecord], *, with_label: bool = False) -> pd.DataFrame:
    """One row per (resonator, power) in SWEEP_COLUMNS order; the label column is appended on request."""
    columns = SWEEP_COLUMNS + ["label"] if with_label else SWEEP_COLUMNS
    frame = pd.DataFrame(
        [{**row.model_dump(), "label": sweep.label} for sweep in records for row in sweep.rows],
        columns=SWEEP_COLUMNS + ["label"],
    )
    return frame[columns]


def summary_table(summary: ResonatorSummary) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in summary.rows], columns=list(ResonatorSummaryRow.model_fields))


def area_table(calibrations: Sequence[CalibrationRecord], designs: Sequence[DesignRecord]) -> pd.DataFrame:
    rows = [
        {
            "source": "calibration",
            "label": residual.label,
            "area_um2": m2_to_um2(residual.area),
            "f_meas_hz": residual.f_meas,
            "f_model_hz": residual.f_fit,
        }
        for record in calibrations
        for residual in record.residuals
    ]
    rows += [
        {
            "source": "design",
            "label": None,
            "area_um2": m2_to_um2(record.area),
            "f_meas_hz": None,
            "f_model_hz": record.frequency_check,
        }
        for record in designs
    ]
    return pd.DataFrame(rows)


def temperature_table(tls_fits: Sequence[TlsFitRecord], fits: Sequence[NotchFitResult]) -> pd.DataFrame:
    rows = [
        {
            "label": record.label,
            "temperature_k": residual.temperature,
            "f_r_hz": residual.f_r,
            "f_model_hz": residual.f_fit,
        }
        for record in tls_fits
        for residual in record.residuals
    ]
    rows += [
        {"label": item.label, "temperature_k": item.temperature_k, "f_r_hz": item.params.f_r, "f_model_hz": None}
        for item in fits
        if item.temperature_k is not None
    ]
    return pd.DataFrame(rows)


def _save(figure: Figure, path: Path) -> None:
    figure.savefig(path, format="svg", metadata=SVG_METADATA)


def plot_frequency_vs_area(frame: pd.DataFrame, path: Path) -> None:
    figure = Figure(figsize=(6, 4))
    axes = figure.add_subplot()
    measured = frame.dropna(subset=["f_meas_hz"])
    axes.scatter(measured.area_um2, measured.f_meas_hz / 1e6, label="measured")
    ordered = frame.sort_values("area_um2")
    axes.plot(ordered.area_um2, ordered.f_model_hz / 1e6, marker="x", linestyle="-", label="model")
    axes.set_xscale("log")
    axes.set_xlabel("plate area (um^2)")
    axes.set_ylabel("resonance frequency (MHz)")
    axes.legend()
    _save(figure, path)


def plot_q_vs_power(frame: pd.DataFrame, path: Path) -> None:
    figure = Figure(figsize=(6, 4))
    axes = figure.add_subplot()
    for label, group in frame.groupby("label", sort=True):
        group = group.sort_values("power_dbm")
        axes.errorbar(group.power_dbm, group.q_i, yerr=group.q_i_sigma, marker="o", capsize=2, label=label or None)
    axes.set_yscale("log")
    axes.set_xlabel("probe power (dBm)")
    axes.set_ylabel("internal quality factor")
    if frame.label.astype(bool).any():
        axes.legend()
    _save(figure, path)


def plot_frequency_vs_temperature(frame: pd.DataFrame, path: Path) -> None:
    figure = Figure(figsize=(6, 4))
    axes = figure.add_subplot()
    for label, group in frame.groupby("label", sort=True):
        group = group.sort_values("temperature_k")
        axes.scatter(group.temperature_k * 1e3, group.f_r_hz / 1e6, label=label or None)
        fitted = group.dropna(subset=["f_model_hz"])
        if not fitted.empty:
            axes.plot(fitted.temperature_k * 1e3, fitted.f_model_hz / 1e6)
    axes.set_xlabel("temperature (mK)")
    axes.set_ylabel("resonance frequency (MHz)")
    _save(figure, path)


def build_report(*, paths: Sequence[Path | str], output_dir: Path | str) -> ReportRecord:
    """Write tables and plots for every record type present; zero inputs is an I/O error."""
    if not paths:
        raise FileNotFoundError("no analysis records to report on")
    records = load_records(paths=paths)
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    def of_type(model: type[BaseModel]) -> list:
        return [item for item in records if isinstance(item, model)]

    fits = of_type(NotchFitResult)
    sweeps = of_type(PowerSweepRecord)
    tls_fits = of_type(TlsFitRecord)
    calibrations = of_type(CalibrationRecord)
    designs = of_type(DesignRecord)

    tables: list[str] = []
    plots: list[str] = []

    def emit(name: str, frame: pd.DataFrame, plot=None) -> None:
        write_table(frame=frame, path=output_dir / f"{name}.csv")
        tables.append(f"{name}.csv")
        if plot is not None:
            plot(frame, output_dir / f"{name}.svg")
            plots.append(f"{name}.svg")

    if fits:
        emit("fits", fit_table(fits))
    if sweeps:
        emit("q_vs_power", sweep_table(sweeps, with_label=True), plot_q_vs_power)
    if len(sweeps) >= 2:
        emit("q_i_summary", summary_table(summarize_resonators(sweeps=sweeps)))
    if calibrations or designs:
        emit("frequency_vs_area", area_table(calibrations, designs), plot_frequency_vs_area)
    temperatures = temperature_table(tls_fits, fits)
    if not temperatures.empty:
        emit("frequency_vs_temperature", temperatures, plot_frequency_vs_temperature)

    logger.info("report: %d records, %d tables, %d plots", len(records), len(tables), len(plots))
    return ReportRecord(
        inputs=len(records),
        counts={
            "fits": len(fits),
            "sweeps": len(sweeps),
            "tls_fits": len(tls_fits),
            "calibrations": len(calibrations),
            "designs": len(designs),
        },
        tables=tables,
        plots=plots,
    )
