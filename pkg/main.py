import json
import logging

import click
import sentry_sdk
from pydantic import ValidationError
from sentry_sdk.integrations.logging import LoggingIntegration

from commands import (
    calibrate_command,
    design_command,
    fit_command,
    predict_command,
    report_command,
    sweep_command,
    synth_command,
    tls_fit_command,
)
from core.config import settings
from core.logs import configure_logging
from services.exceptions import (
    ConfigurationError,
    DegenerateGeometryError,
    DomainError,
    FitConvergenceError,
    FitQualityError,
    TraceParseError,
)

EXIT_VALIDATION = 1
EXIT_CONVERGENCE = 2
EXIT_IO = 3

EXIT_CODES: tuple[tuple[tuple[type[BaseException], ...], int], ...] = (
    ((FitConvergenceError,), EXIT_CONVERGENCE),
    ((TraceParseError, OSError), EXIT_IO),
    (
        (
            ValidationError,
            DomainError,
            ConfigurationError,
            DegenerateGeometryError,
            FitQualityError,
            click.UsageError,
        ),
        EXIT_VALIDATION,
    ),
)

# Инициализация Sentry
if settings.sentry_dsn:
    sentry_sdk.init(
        dsn=settings.sentry_dsn,
        environment=settings.sentry_environment,
        traces_sample_rate=settings.sentry_traces_sample_rate,
        integrations=[LoggingIntegration(level=logging.INFO, event_level=logging.ERROR)],
        debug=settings.debug,
        send_default_pii=False,  # Не отправлять персональные данные по умолчанию
    )


def exit_code_for(exc: BaseException) -> int | None:
    for types, code in EXIT_CODES:
        if isinstance(exc, types):
            return code
    return None


def error_payload(exc: BaseException, code: int) -> dict:
    detail = getattr(exc, "detail", None)
    if detail is None:
        detail = exc.format_message() if isinstance(exc, click.ClickException) else str(exc)
    payload = {"error": type(exc).__name__, "detail": detail, "exit_code": code}
    if isinstance(exc, FitConvergenceError) and exc.last_iterate is not None:
        payload["last_iterate"] = exc.last_iterate
    if isinstance(exc, FitQualityError) and exc.diagnostics:
        payload["diagnostics"] = exc.diagnostics
    return payload


class TadpoleGroup(click.Group):
    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except click.exceptions.Exit:
            raise
        except Exception as exc:
            code = exit_code_for(exc)
            if code is None:
                # Все необработанные исключения уходят в Sentry
                sentry_sdk.capture_exception(exc)
                raise
            click.echo(json.dumps(error_payload(exc, code)), err=True)
            ctx.exit(code)


@click.group(cls=TadpoleGroup)
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
def cli(verbose: bool) -> None:
    """Design and characterization of lumped-element tadpole resonators."""
    configure_logging("DEBUG" if verbose or settings.debug else settings.log_level)


cli.add_command(design_command)
cli.add_command(predict_command)
cli.add_command(calibrate_command)
cli.add_command(synth_command)
cli.add_command(fit_command)
cli.add_command(sweep_command)
cli.add_command(tls_fit_command)
cli.add_command(report_command)


if __name__ == "__main__":
    cli()
