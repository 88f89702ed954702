from pathlib import Path

import click

from commands.options import build_geometry, emit_record, geometry_options, output_option, plate_c0, plate_options
from core.units import mhz_to_hz, nh_to_h, pf_to_f, um2_to_m2
from schemas.lumped import LumpedModel, PpcSpec, PredictionInput
from services.cpw import strip_lc, total_length
from services.lumped import calibrate_c0, design_tadpole, ppc_capacitance, prediction_report
from services.traces import read_calibration_dataset


@click.command("design")
@click.option("--target-frequency-mhz", type=float, required=True, help="Target resonance frequency (MHz).")
@plate_options
@click.option("--inductance-nh", type=float, default=None, help="Strip inductance override (nH).")
@click.option("--c-cpw-pf", type=float, default=None, help="Strip capacitance override (pF).")
@geometry_options
@output_option
def design_command(
    target_frequency_mhz: float,
    c0_ff_per_um2: float | None,
    eps_d: float | None,
    dielectric_thickness_nm: float,
    inductance_nh: float | None,
    c_cpw_pf: float | None,
    output: Path | None,
    **geometry: float | None,
) -> None:
    """Plate area and figures of merit for a target frequency."""
    record = design_tadpole(
        f_target=mhz_to_hz(target_frequency_mhz),
        geom=build_geometry(**geometry),
        c0=plate_c0(c0_ff_per_um2=c0_ff_per_um2, eps_d=eps_d, dielectric_thickness_nm=dielectric_thickness_nm),
        inductance=None if inductance_nh is None else nh_to_h(inductance_nh),
        c_cpw=None if c_cpw_pf is None else pf_to_f(c_cpw_pf),
    )
    for note in record.notes:
        click.echo(f"note: {note}", err=True)
    emit_record(record, output)


@click.command("predict")
@click.option("--input", "input_path", type=click.Path(dir_okay=False, path_type=Path), default=None, help="CSV with label,area_um2,f_meas_mhz.")
@click.option("--area-um2", type=float, multiple=True, help="Plate area (um^2); repeatable.")
@plate_options
@click.option("--inductance-nh", type=float, default=None, help="Strip inductance override (nH).")
@click.option("--c-cpw-pf", type=float, default=None, help="Strip capacitance override (pF).")
@geometry_options
@output_option
def predict_command(
    input_path: Path | None,
    area_um2: tuple[float, ...],
    c0_ff_per_um2: float | None,
    eps_d: float | None,
    dielectric_thickness_nm: float,
    inductance_nh: float | None,
    c_cpw_pf: float | None,
    output: Path | None,
    **geometry: float | None,
) -> None:
    """Predicted frequency, impedance and size ratio per plate area."""
    geom = build_geometry(**geometry)
    analytic = strip_lc(geom=geom)
    inductance = analytic.inductance if inductance_nh is None else nh_to_h(inductance_nh)
    c_cpw = analytic.capacitance if c_cpw_pf is None else pf_to_f(c_cpw_pf)
    c0 = plate_c0(c0_ff_per_um2=c0_ff_per_um2, eps_d=eps_d, dielectric_thickness_nm=dielectric_thickness_nm)

    measured = None
    if input_path is not None:
        dataset = read_calibration_dataset(path=input_path)
        rows = [(row.label, row.area) for row in dataset.rows]
        measured = [row.f_meas for row in dataset.rows]
    else:
        rows = [(None, um2_to_m2(area)) for area in area_um2]
    if not rows:
        raise click.UsageError("give --input or at least one --area-um2")

    designs = [
        PredictionInput(
            label=label,
            model=LumpedModel(inductance=inductance, c_ppc=ppc_capacitance(spec=PpcSpec(area=area, c0=c0)), c_cpw=c_cpw),
            total_length=total_length(strip_length=geom.length, ppc_area=area),
            eps_eff=geom.effective_permittivity,
        )
        for label, area in rows
    ]
    emit_record(prediction_report(designs=designs, measured=measured), output)


@click.command("calibrate")
@click.option("--input", "input_path", type=click.Path(dir_okay=False, path_type=Path), required=True, help="CSV with label,area_um2,f_meas_mhz.")
@click.option("--inductance-nh", type=float, default=None, help="Strip inductance (nH); default from conformal mapping.")
@click.option("--c-cpw-pf", type=float, default=None, help="Strip capacitance (pF); default from conformal mapping.")
@geometry_options
@output_option
def calibrate_command(
    input_path: Path,
    inductance_nh: float | None,
    c_cpw_pf: float | None,
    output: Path | None,
    **geometry: float | None,
) -> None:
    """Fit capacitance per area to measured frequencies."""
    analytic = strip_lc(geom=build_geometry(**geometry))
    record = calibrate_c0(
        data=read_calibration_dataset(path=input_path),
        inductance=analytic.inductance if inductance_nh is None else nh_to_h(inductance_nh),
        c_cpw=analytic.capacitance if c_cpw_pf is None else pf_to_f(c_cpw_pf),
    )
    emit_record(record, output)
