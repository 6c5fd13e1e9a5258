"""Command line entry point: simulations, figure tables, sweeps and the check suite."""
from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any, Optional

import typer
from pydantic import ValidationError

import structlog

from qw_eval import render_report, run_checks

from .experiments import figure_table, run_experiment, sweep_table
from .export import CsvTable
from .loader import get_verify_settings, text_sha256
from .models import ExperimentConfig, What
from .versioning import config_versions

EXIT_IO_ERROR = 1
EXIT_INVALID = 2
EXIT_VERIFY_FAILED = 3

app = typer.Typer(help="Hadamard walk on even cycles", no_args_is_help=True)

logger = structlog.get_logger(__name__)


def _stderr_logger(*_args: Any) -> structlog.PrintLogger:
    # resolve sys.stderr per call so redirected streams are honoured
    return structlog.PrintLogger(file=sys.stderr)


def configure_logging(verbose: bool = False) -> None:
    """Route structured JSON events to stderr; stdout carries CSV and reports only."""

    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.JSONRenderer(sort_keys=True),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.DEBUG if verbose else logging.INFO
        ),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


def _validation_message(exc: ValidationError) -> str:
    error = exc.errors()[0]
    location = ".".join(str(part) for part in error.get("loc", ()))
    message = str(error.get("msg", exc))
    return f"{location}: {message}" if location else message


def _invalid(message: str) -> typer.Exit:
    typer.echo(f"error: {message}", err=True)
    return typer.Exit(code=EXIT_INVALID)


def _emit(result: CsvTable, out: Optional[Path], command: str) -> None:
    text = result.render()
    if out is None:
        typer.echo(text, nl=False)
    else:
        try:
            out.write_text(text, encoding="utf-8")
        except OSError as exc:
            typer.echo(f"error: cannot write {out}: {exc}", err=True)
            raise typer.Exit(code=EXIT_IO_ERROR) from exc
    logger.info(
        f"cli.{command}.written",
        path=str(out) if out is not None else "-",
        rows=len(result.rows),
        sha256=text_sha256(text)[:12],
    )


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Emit debug events on stderr"),
) -> None:
    configure_logging(verbose)


@app.command("simulate")
def simulate(
    d: int = typer.Option(..., "--d", help="Cycle size (even, >= 4)"),
    initial: str = typer.Option(
        ..., "--initial", help="single:<v0> | pair:<m>,<k>[,upper] | quad:<m>,<k>"
    ),
    t_max: int = typer.Option(..., "--t-max", help="Last time step"),
    what: What = typer.Option(What.tvd_series, "--what", help="Quantity to write"),
    out: Optional[Path] = typer.Option(None, "--out", help="CSV path (default: stdout)"),
) -> None:
    """Run one experiment and write its CSV table."""

    try:
        config = ExperimentConfig(d=d, initial=initial, t_max=t_max, what=what, output_path=out)
    except ValidationError as exc:
        raise _invalid(_validation_message(exc)) from exc

    try:
        result = run_experiment(config)
    except (ValueError, IndexError) as exc:
        raise _invalid(str(exc)) from exc
    _emit(result, out, "simulate")


@app.command("figure")
def figure(
    number: int = typer.Argument(..., help="Figure number (1, 2 or 3)"),
    out: Optional[Path] = typer.Option(None, "--out", help="CSV path (default: stdout)"),
) -> None:
    """Write the simulated series of a preset figure, with the analytic column when defined."""

    try:
        result = figure_table(number)
    except ValidationError as exc:
        raise _invalid(_validation_message(exc)) from exc
    except (ValueError, IndexError) as exc:
        raise _invalid(str(exc)) from exc
    _emit(result, out, "figure")


@app.command("sweep")
def sweep(
    d_min: int = typer.Option(8, "--d-min", help="Smallest cycle size"),
    d_max: int = typer.Option(64, "--d-max", help="Largest cycle size"),
    out: Optional[Path] = typer.Option(None, "--out", help="CSV path (default: stdout)"),
) -> None:
    """Exact and asymptotic limiting distance of the single-node start across cycle sizes."""

    try:
        result = sweep_table(d_min, d_max)
    except ValueError as exc:
        raise _invalid(str(exc)) from exc
    _emit(result, out, "sweep")


@app.command("verify")
def verify(
    jobs: int = typer.Option(1, "--jobs", "-j", min=1, help="Checks to run in parallel"),
    only: Optional[str] = typer.Option(None, "--only", help="Comma-separated check names"),
) -> None:
    """Run the invariant suite and print one PASS/FAIL line per check."""

    try:
        settings = get_verify_settings()
    except OSError as exc:
        typer.echo(f"error: cannot read verify settings: {exc}", err=True)
        raise typer.Exit(code=EXIT_IO_ERROR) from exc
    except ValueError as exc:
        raise _invalid(f"invalid verify settings: {exc}") from exc

    names = [name.strip() for name in only.split(",") if name.strip()] if only else None
    logger.info("verify.start", jobs=jobs, configs=config_versions())
    try:
        results = run_checks(settings, names=names, jobs=jobs)
    except KeyError as exc:
        raise _invalid(str(exc.args[0])) from exc

    report = render_report(results)
    typer.echo(report.text, nl=False)
    if not report.passed:
        logger.info("verify.failed", failed=report.failed_names)
        raise typer.Exit(code=EXIT_VERIFY_FAILED)
    logger.info("verify.ok", checks=len(results))


if __name__ == "__main__":  # pragma: no cover
    app()
