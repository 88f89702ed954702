from collections.abc import Callable
from pathlib import Path

import click
from pydantic import BaseModel, TypeAdapter

from core.config import settings
from core.units import ff_per_um2_to_si, nm_to_m, um_to_m
from schemas.cpw import CpwGeometry
from services.lumped import c0_from_dielectric
from services.traces import write_json


def geometry_options(command: Callable) -> Callable:
    options = [
        click.option("--width-um", type=float, default=settings.width_um, show_default=True, help="Center strip width (um)."),
        click.option("--gap-um", type=float, default=settings.gap_um, show_default=True, help="Strip-to-ground gap (um)."),
        click.option("--length-um", type=float, default=settings.length_um, show_default=True, help="Strip length (um)."),
        click.option("--eps-r", type=float, default=settings.eps_r, show_default=True, help="Substrate relative permittivity."),
        click.option("--eps-eff", type=float, default=settings.eps_eff, help="Effective permittivity override (default (eps_r + 1) / 2)."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def build_geometry(*, width_um: float, gap_um: float, length_um: float, eps_r: float, eps_eff: float | None) -> CpwGeometry:
    return CpwGeometry(
        width=um_to_m(width_um),
        gap=um_to_m(gap_um),
        length=um_to_m(length_um),
        eps_r=eps_r,
        eps_eff=eps_eff,
    )


def plate_options(command: Callable) -> Callable:
    options = [
        click.option("--c0-ff-per-um2", type=float, default=None, help=f"Plate capacitance per area (fF/um^2) [default: {settings.c0_ff_per_um2}]."),
        click.option("--eps-d", type=float, default=None, help="Plate dielectric permittivity; derives c0 from the dielectric thickness."),
        click.option("--dielectric-thickness-nm", type=float, default=settings.dielectric_thickness_nm, show_default=True, help="Plate dielectric thickness (nm), used with --eps-d."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def plate_c0(*, c0_ff_per_um2: float | None, eps_d: float | None, dielectric_thickness_nm: float) -> float:
    if eps_d is None:
        return ff_per_um2_to_si(settings.c0_ff_per_um2 if c0_ff_per_um2 is None else c0_ff_per_um2)
    if c0_ff_per_um2 is not None:
        raise click.UsageError("give either --c0-ff-per-um2 or --eps-d, not both")
    return c0_from_dielectric(eps_d=eps_d, thickness=nm_to_m(dielectric_thickness_nm))


output_option = click.option(
    "--output",
    "output",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write JSON here instead of stdout.",
)


def emit_record(record: BaseModel, output: Path | None) -> None:
    if output is None:
        click.echo(record.model_dump_json(indent=2))
    else:
        write_json(record=record, path=output)


def emit_records(records: list, model: type[BaseModel], output: Path | None) -> None:
    text = TypeAdapter(list[model]).dump_json(records, indent=2).decode("utf-8")
    if output is None:
        click.echo(text)
    else:
        output.write_text(text + "\n", encoding="utf-8")
