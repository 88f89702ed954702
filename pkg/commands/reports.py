from pathlib import Path

import click

from commands.options import emit_record
from services.reports import build_report


@click.command("report")
@click.argument("record_paths", nargs=-1, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--output-dir", type=click.Path(file_okay=False, path_type=Path), required=True, help="Directory for CSV tables and SVG plots.")
def report_command(record_paths: tuple[Path, ...], output_dir: Path) -> None:
    """Tables and plots from fit, sweep, TLS, calibration and design records."""
    emit_record(build_report(paths=list(record_paths), output_dir=output_dir), None)
