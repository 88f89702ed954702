from pathlib import Path

import click

from commands.options import emit_record, output_option
from schemas.notch import NotchFitResult
from services.tls import compare_fits, fit_tls
from services.traces import read_json, read_temperature_dataset


@click.command("tls-fit")
@click.option("--input", "input_path", type=click.Path(dir_okay=False, path_type=Path), required=True, help="CSV with temperature_k,f_r_hz[,sigma_f_hz].")
@click.option("--filling-factor", type=click.FloatRange(min=0.0, max=1.0, min_open=True), default=1.0, show_default=True, help="Fixed TLS filling factor.")
@click.option("--label", type=str, default="", help="Dataset label; defaults to the file name.")
@click.option("--compare-fit", "compare_paths", type=click.Path(dir_okay=False, path_type=Path), multiple=True, help="Notch fit JSON with temperature_k to compare 1/Q_i against the fitted loss tangent; repeatable.")
@output_option
def tls_fit_command(
    input_path: Path,
    filling_factor: float,
    label: str,
    compare_paths: tuple[Path, ...],
    output: Path | None,
) -> None:
    """Fit f0 and delta0 of the TLS model to frequency vs temperature."""
    data = read_temperature_dataset(path=input_path, label=label)
    record = fit_tls(data=data, filling_factor=filling_factor)
    if compare_paths:
        fits = [read_json(path=path, model=NotchFitResult) for path in compare_paths]
        record = compare_fits(record=record, fits=fits)
    emit_record(record, output)
