from pathlib import Path

import click

from commands.options import emit_record, emit_records, output_option
from core.config import settings
from core.enums import TraceFormat
from core.units import mhz_to_hz
from schemas.notch import NotchFitResult, NotchParams
from services.notch import analyze_power_sweep, extract_notch, fit_multiplexed
from services.reports import sweep_table
from services.synth import linewidth_grid, synthesize_trace
from services.traces import read_trace, write_table, write_trace

trace_format_option = click.option(
    "--format",
    "trace_format",
    type=click.Choice([item.value for item in TraceFormat]),
    default=None,
    help="Trace format; guessed from the file suffix when omitted.",
)
attenuation_option = click.option(
    "--attenuation-db",
    type=float,
    default=settings.line_attenuation_db,
    show_default=True,
    help="Line attenuation between source and sample (dB).",
)


@click.command("synth")
@click.option("--f-r-mhz", type=float, required=True, help="Resonance frequency (MHz).")
@click.option("--q-loaded", type=float, required=True, help="Loaded quality factor.")
@click.option("--q-external", type=float, required=True, help="Magnitude of the external quality factor.")
@click.option("--phi-rad", type=float, default=0.0, show_default=True, help="Impedance-mismatch rotation (rad).")
@click.option("--amplitude", type=float, default=1.0, show_default=True, help="Off-resonant amplitude.")
@click.option("--alpha-rad", type=float, default=0.0, show_default=True, help="Off-resonant phase (rad).")
@click.option("--delay-ns", type=float, default=0.0, show_default=True, help="Electric delay (ns).")
@click.option("--linewidths", type=float, default=5.0, show_default=True, help="Half span of the grid in linewidths.")
@click.option("--points", type=click.IntRange(min=5), default=2001, show_default=True, help="Number of grid points.")
@click.option("--noise-sigma", type=click.FloatRange(min=0.0), default=0.0, show_default=True, help="Per-quadrature noise std.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed of the PCG64 noise generator.")
@click.option("--power-dbm", type=float, default=None, help="Probe power metadata (dBm).")
@click.option("--temperature-k", type=float, default=None, help="Temperature metadata (K).")
@click.option("--label", type=str, default="", help="Trace label.")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), required=True, help="Trace CSV to write.")
def synth_command(
    f_r_mhz: float,
    q_loaded: float,
    q_external: float,
    phi_rad: float,
    amplitude: float,
    alpha_rad: float,
    delay_ns: float,
    linewidths: float,
    points: int,
    noise_sigma: float,
    seed: int,
    power_dbm: float | None,
    temperature_k: float | None,
    label: str,
    output: Path,
) -> None:
    """Write a synthetic notch trace."""
    params = NotchParams(
        f_r=mhz_to_hz(f_r_mhz),
        q_loaded=q_loaded,
        q_external=q_external,
        phi=phi_rad,
        amplitude=amplitude,
        alpha=alpha_rad,
        delay=delay_ns * 1e-9,
    )
    trace = synthesize_trace(
        params=params,
        frequencies=linewidth_grid(params=params, linewidths=linewidths, points=points),
        noise_sigma=noise_sigma,
        seed=seed,
        power_dbm=power_dbm,
        temperature_k=temperature_k,
        label=label,
    )
    write_trace(trace=trace, path=output)


@click.command("fit")
@click.argument("trace_path", type=click.Path(dir_okay=False, path_type=Path))
@trace_format_option
@click.option("--power-dbm", type=float, default=None, help="Source power (dBm), overrides file metadata.")
@click.option("--temperature-k", type=float, default=None, help="Temperature (K), overrides file metadata.")
@click.option("--delay-hint-ns", type=float, default=None, help="Known electric delay (ns).")
@click.option("--f-guess-mhz", type=float, multiple=True, help="Approximate resonance (MHz) of a multiplexed trace; repeatable.")
@attenuation_option
@click.option("--workers", type=click.IntRange(min=1), default=settings.workers, show_default=True, help="Worker processes for multiplexed traces.")
@output_option
def fit_command(
    trace_path: Path,
    trace_format: str | None,
    power_dbm: float | None,
    temperature_k: float | None,
    delay_hint_ns: float | None,
    f_guess_mhz: tuple[float, ...],
    attenuation_db: float,
    workers: int,
    output: Path | None,
) -> None:
    """Extract quality factors from a notch trace."""
    trace = read_trace(
        path=trace_path,
        trace_format=None if trace_format is None else TraceFormat(trace_format),
        power_dbm=power_dbm,
        temperature_k=temperature_k,
    )
    if f_guess_mhz:
        results = fit_multiplexed(
            trace=trace,
            f_guesses=[mhz_to_hz(value) for value in f_guess_mhz],
            attenuation_db=attenuation_db,
            workers=workers,
        )
        emit_records(results, NotchFitResult, output)
        return
    result = extract_notch(
        trace=trace,
        delay_hint=None if delay_hint_ns is None else delay_hint_ns * 1e-9,
        attenuation_db=attenuation_db,
    )
    emit_record(result, output)


@click.command("sweep")
@click.argument("trace_paths", nargs=-1, required=True, type=click.Path(dir_okay=False, path_type=Path))
@trace_format_option
@attenuation_option
@click.option("--workers", type=click.IntRange(min=1), default=settings.workers, show_default=True, help="Worker processes.")
@click.option("--table", "table_path", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Also write the sweep as CSV.")
@output_option
def sweep_command(
    trace_paths: tuple[Path, ...],
    trace_format: str | None,
    attenuation_db: float,
    workers: int,
    table_path: Path | None,
    output: Path | None,
) -> None:
    """Quality factors vs probe power; traces carry power_dbm metadata."""
    traces = [
        read_trace(path=path, trace_format=None if trace_format is None else TraceFormat(trace_format))
        for path in trace_paths
    ]
    record = analyze_power_sweep(traces=traces, attenuation_db=attenuation_db, workers=workers)
    if table_path is not None:
        write_table(frame=sweep_table([record]), path=table_path)
    emit_record(record, output)
