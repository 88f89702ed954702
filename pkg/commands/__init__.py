from commands.design import calibrate_command, design_command, predict_command
from commands.reports import report_command
from commands.resonators import fit_command, sweep_command, synth_command
from commands.tls import tls_fit_command


__all__ = [
    "calibrate_command",
    "design_command",
    "fit_command",
    "predict_command",
    "report_command",
    "sweep_command",
    "synth_command",
    "tls_fit_command",
]
