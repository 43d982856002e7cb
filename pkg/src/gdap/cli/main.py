"""
Main CLI entrypoint for gdap.

This module provides the command-line interface using Typer. Data goes to
standard output (or --output); summaries, warnings and machine-readable
errors go to standard error. Exit codes: 0 ok, 1 verification failure,
2 I/O error, 3 validation error, 4 numerical failure.
"""

import csv
import json
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import numpy as np
import typer
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator
from rich.console import Console
from rich.table import Table

from gdap import __version__
from gdap.core.exceptions import (
    GdapError,
    GdapValidationError,
    InvalidDelayError,
    InvalidDimensionError,
    LegacyModeUnsafeError,
    UnsupportedBackendError,
    VerificationFailedError,
)
from gdap.core.models import ComponentMatrix, IndexConvention, validate_config
from gdap.decomposition.backends import BACKENDS
from gdap.decomposition.core import Grouping, run_pipeline
from gdap.diophantine.core import Rectangle, solve_constrained
from gdap.embedding.core import embed, pull_back
from gdap.embedding.legacy import legacy_dap
from gdap.utils.config import get_config, reset_config
from gdap.utils.logger import bound_context, get_logger, setup_logging
from gdap.verification.reference import example_config, example_table, misprinted_rows
from gdap.verification.suites import SUITES, run_suites

from .io import (
    format_float,
    open_output,
    read_matrix,
    read_series,
    write_columns_csv,
    write_json,
    write_matrix_csv,
)

app = typer.Typer(
    name="gdap",
    help="gdap - generalized diagonal averaging for SSA/SGMD decompositions",
    add_completion=False,
    no_args_is_help=True,
)
console = Console()
err_console = Console(stderr=True)
logger = get_logger(__name__)


class Command(str, Enum):
    """Subcommands accepted by the CLI."""

    EMBED = "embed"
    SOLVE = "solve"
    DECOMPOSE = "decompose"
    RECONSTRUCT = "reconstruct"
    TABLES = "tables"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    """Serialization of command output."""

    CSV = "csv"
    JSON = "json"


class Layout(str, Enum):
    """Orientation of an emitted trajectory matrix."""

    SSA = "ssa"
    SGMD = "sgmd"


INPUT_COMMANDS = {Command.EMBED, Command.DECOMPOSE, Command.RECONSTRUCT}
LEGACY_COMMANDS = {Command.DECOMPOSE, Command.RECONSTRUCT}


class RunConfig(BaseModel):
    """
    Validated flags of one CLI invocation.

    Flag combinations are checked here, before any file is read or any
    matrix is built.

    Attributes:
        command: Subcommand being run
        input_path: Input file (series, or matrix for reconstruct)
        output_path: Output file, standard output when None
        d: Embedding dimension
        tau: Time delay
        convention: Index convention s
        backend: Decomposition backend name
        grouping: Grouping string such as "1,2;3"
        legacy: Reconstruct with the legacy anti-diagonal rule
        force: Allow legacy reconstruction outside (s, tau) = (1, 1)
        output_format: csv or json
    """

    model_config = ConfigDict(frozen=True)

    command: Command
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    d: Optional[int] = None
    tau: int = 1
    convention: IndexConvention = IndexConvention.TYPE0
    backend: str = "svd"
    grouping: Optional[str] = None
    legacy: bool = False
    force: bool = False
    output_format: OutputFormat = OutputFormat.CSV

    @field_validator("convention", mode="before")
    @classmethod
    def _coerce_convention(cls, v: Any) -> IndexConvention:
        return IndexConvention.parse(v)

    @model_validator(mode="after")
    def _check_flags(self) -> "RunConfig":
        if self.command in INPUT_COMMANDS and self.input_path is None:
            raise GdapValidationError(f"{self.command.value} needs --input", {"flag": "--input"})
        if self.command in {Command.EMBED, Command.DECOMPOSE} and self.d is None:
            raise InvalidDimensionError(f"{self.command.value} needs --d", {"flag": "--d"})
        if self.d is not None and self.d < 1:
            raise InvalidDimensionError(f"d must be >= 1, got {self.d}", {"d": self.d})
        if self.tau < 1:
            raise InvalidDelayError(f"tau must be >= 1, got {self.tau}", {"tau": self.tau})
        if self.legacy and self.command not in LEGACY_COMMANDS:
            raise GdapValidationError(
                f"--legacy does not apply to {self.command.value}", {"flag": "--legacy"}
            )
        if self.force and not self.legacy:
            raise GdapValidationError("--force only applies together with --legacy", {})
        if self.legacy and (int(self.convention), self.tau) != (1, 1) and not self.force:
            raise LegacyModeUnsafeError(
                "--legacy is only valid for --convention 1 --tau 1; add --force to run it anyway",
                {"s": int(self.convention), "tau": self.tau},
            )
        if self.grouping is not None and self.command is not Command.DECOMPOSE:
            raise GdapValidationError("--group only applies to decompose", {"flag": "--group"})
        if self.backend.lower() not in BACKENDS:
            raise UnsupportedBackendError(
                f"unknown backend {self.backend!r}; available: {', '.join(sorted(BACKENDS))}",
                {"backend": self.backend},
            )
        return self


@contextmanager
def reported_errors(command: Command) -> Iterator[None]:
    """Turn gdap errors into a JSON line on standard error and their exit code."""
    try:
        with bound_context(command=command.value):
            yield
    except GdapError as e:
        logger.debug("command_failed", error=e.code, exit_code=e.exit_code)
        typer.echo(json.dumps(e.to_dict()), err=True)
        raise typer.Exit(code=e.exit_code) from e


def _floats(values: np.ndarray, digits: int) -> list[float]:
    return [float(format_float(v, digits)) for v in np.ravel(values)]


def version_callback(value: bool) -> None:
    """
    Print version and exit.

    Args:
        value: If True, print version and exit
    """
    if value:
        console.print(f"gdap version: {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: Optional[bool] = typer.Option(
        None,
        "--version",
        "-v",
        help="Show version and exit",
        callback=version_callback,
        is_eager=True,
    ),
    log_level: Optional[str] = typer.Option(
        None,
        "--log-level",
        "-l",
        help="Set log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    ),
    json_logs: bool = typer.Option(
        False,
        "--json-logs",
        help="Output logs in JSON format",
    ),
) -> None:
    """
    gdap CLI - embed, decompose and pull back time series.

    Args:
        version: Show version and exit
        log_level: Logging level, overrides GDAP_LOG_LEVEL
        json_logs: Enable JSON log format
    """
    reset_config()
    try:
        config = get_config()
        setup_logging(
            log_level=log_level or config.log_level,
            json_format=json_logs or config.log_json,
        )
    except (ValidationError, ValueError) as e:
        typer.echo(
            json.dumps({"error": "invalid_settings", "exit_code": 3, "message": str(e)}),
            err=True,
        )
        raise typer.Exit(code=3) from e


@app.command("embed")
def embed_cmd(
    input_path: Optional[Path] = typer.Option(
        None, "--input", "-i", help="Series file, one sample per line"
    ),
    d: Optional[int] = typer.Option(None, "--d", help="Embedding dimension"),
    tau: int = typer.Option(1, "--tau", help="Time delay"),
    convention: int = typer.Option(0, "--convention", "-s", help="Index convention (0 or 1)"),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f"),
    output_path: Optional[Path] = typer.Option(None, "--output", "-o", help="Output file"),
    layout: Layout = typer.Option(
        Layout.SSA, "--layout", help="ssa writes d x m, sgmd writes the m x d transpose"
    ),
) -> None:
    """Write the trajectory matrix of a series."""
    with reported_errors(Command.EMBED):
        run = RunConfig(
            command=Command.EMBED,
            input_path=input_path,
            output_path=output_path,
            d=d,
            tau=tau,
            convention=convention,
            output_format=output_format,
        )
        digits = get_config().float_digits
        assert run.input_path is not None and run.d is not None
        series = read_series(run.input_path, int(run.convention))
        matrix = embed(series, run.d, run.tau)
        data = matrix.sgmd_layout() if layout is Layout.SGMD else matrix.data
        summary = matrix.config.summary()

        with open_output(run.output_path) as out:
            if run.output_format is OutputFormat.JSON:
                write_json(
                    {
                        "config": summary,
                        "layout": layout.value,
                        "matrix": [_floats(row, digits) for row in data],
                    },
                    out,
                )
            else:
                write_matrix_csv(data, out, digits)
        err_console.print(" ".join(f"{k}={v}" for k, v in summary.items()))


@app.command("solve")
def solve_cmd(
    n: int = typer.Option(..., "--n", help="Target sample index"),
    tau: int = typer.Option(1, "--tau", help="Time delay"),
    convention: int = typer.Option(0, "--s", "--convention", "-s", help="Index convention"),
    rect: str = typer.Option(..., "--rect", help="alpha1,alpha2,beta1,beta2"),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f"),
) -> None:
    """List the solutions of tau*x + y = n + s*tau inside a rectangle."""
    with reported_errors(Command.SOLVE):
        run = RunConfig(
            command=Command.SOLVE, tau=tau, convention=convention, output_format=output_format
        )
        rectangle = Rectangle.parse(rect)
        solutions = solve_constrained(n, run.tau, int(run.convention), rectangle)

        if run.output_format is OutputFormat.JSON:
            write_json(
                {
                    "n": n,
                    "tau": run.tau,
                    "s": int(run.convention),
                    "rect": list(rectangle.as_tuple()),
                    "points": [list(p) for p in solutions.points],
                    "cardinality": solutions.cardinality,
                    "x_min": solutions.x_min,
                    "x_max": solutions.x_max,
                },
                sys.stdout,
            )
            return
        for x, y in solutions.points:
            typer.echo(f"{x},{y}")
        err_console.print(f"cardinality: {solutions.cardinality}")


@app.command("tables")
def tables_cmd(
    table: Optional[int] = typer.Option(
        None, "--table", "-t", help="Only the type-0 or type-1 table"
    ),
    output_path: Optional[Path] = typer.Option(None, "--output", "-o", help="Output file"),
) -> None:
    """Regenerate the solution tables of the (27, 7, 9, 3) example."""
    with reported_errors(Command.TABLES):
        run = RunConfig(command=Command.TABLES, output_path=output_path)
        flags = [0, 1] if table is None else [int(IndexConvention.parse(table))]

        with open_output(run.output_path) as out:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["table", "n", "x_min", "x_max", "cardinality", "solutions"])
            for s in flags:
                config = example_config(s)
                rect = Rectangle.for_embedding(config.d, config.m, s)
                a1, a2, b1, b2 = rect.as_tuple()
                out.write(
                    f"# G_{s}(n,{config.tau},{a1},{a2},{b1},{b2}) "
                    f"N={config.N} d={config.d} m={config.m} tau={config.tau} s={s}\n"
                )
                misprints = misprinted_rows(s)
                for row in example_table(s):
                    if row.n in misprints:
                        printed = "{" + ",".join(f"({x},{y})" for x, y in misprints[row.n]) + "}"
                        out.write(
                            f"# n={row.n}: published row {printed} does not satisfy "
                            f"{config.tau}x + y = {row.n + s * config.tau}; derived set listed\n"
                        )
                    writer.writerow(
                        [
                            s,
                            row.n,
                            "" if row.x_min is None else row.x_min,
                            "" if row.x_max is None else row.x_max,
                            row.cardinality,
                            row.format(),
                        ]
                    )


@app.command("decompose")
def decompose_cmd(
    input_path: Optional[Path] = typer.Option(
        None, "--input", "-i", help="Series file, one sample per line"
    ),
    d: Optional[int] = typer.Option(None, "--d", help="Embedding dimension"),
    tau: int = typer.Option(1, "--tau", help="Time delay"),
    convention: int = typer.Option(0, "--convention", "-s", help="Index convention (0 or 1)"),
    backend: str = typer.Option("svd", "--backend", "-b", help="Decomposition backend"),
    group: Optional[str] = typer.Option(
        None, "--group", "-g", help='Component grouping, e.g. "1,2;3"'
    ),
    legacy: bool = typer.Option(False, "--legacy", help="Use the legacy anti-diagonal rule"),
    force: bool = typer.Option(False, "--force", help="Allow --legacy outside s=1, tau=1"),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f"),
    output_path: Optional[Path] = typer.Option(None, "--output", "-o", help="Output file"),
) -> None:
    """Split a series into component series plus a residual column."""
    with reported_errors(Command.DECOMPOSE):
        run = RunConfig(
            command=Command.DECOMPOSE,
            input_path=input_path,
            output_path=output_path,
            d=d,
            tau=tau,
            convention=convention,
            backend=backend,
            grouping=group,
            legacy=legacy,
            force=force,
            output_format=output_format,
        )
        grouping = Grouping.parse(run.grouping) if run.grouping else None
        digits = get_config().float_digits
        assert run.input_path is not None and run.d is not None
        series = read_series(run.input_path, int(run.convention))

        if run.legacy and (int(run.convention), run.tau) != (1, 1):
            err_console.print(
                "[yellow]warning:[/yellow] legacy reconstruction is not valid for "
                f"s={int(run.convention)}, tau={run.tau}; components will not add up to the input"
            )
        result = run_pipeline(
            series,
            run.d,
            run.tau,
            grouping=grouping,
            backend=run.backend,
            legacy=run.legacy,
            force=run.force,
        )
        dec = result.decomposition
        residual = result.residual()
        index = [int(k) for k in series.logical_indices()]

        with open_output(run.output_path) as out:
            if run.output_format is OutputFormat.JSON:
                write_json(
                    {
                        "config": dec.config.summary(),
                        "method": dec.method,
                        "reconstruction": result.reconstruction,
                        "n": index,
                        "components": [
                            {
                                "label": comp.label,
                                "sources": list(dec.sources[k]) if dec.sources else [comp.label],
                                "values": _floats(values.values, digits),
                            }
                            for k, (comp, values) in enumerate(
                                zip(dec.components, result.components)
                            )
                        ],
                        "residual": _floats(residual, digits),
                        "singular_values": (
                            None
                            if dec.singular_values is None
                            else _floats(dec.singular_values, digits)
                        ),
                        "energy_fractions": _floats(dec.energy_fractions(), digits),
                    },
                    out,
                )
            else:
                header = ["n"] + [f"component_{c.label}" for c in dec.components] + ["residual"]
                columns = [index] + [c.values for c in result.components] + [residual]
                write_columns_csv(header, columns, out, digits)
        err_console.print(
            f"{dec.r} components, method={dec.method}, reconstruction={result.reconstruction}, "
            f"max|residual|={float(np.max(np.abs(residual))):.3g}"
        )


@app.command("reconstruct")
def reconstruct_cmd(
    input_path: Optional[Path] = typer.Option(
        None, "--input", "-i", help="Component matrix CSV, d rows of m values"
    ),
    tau: int = typer.Option(1, "--tau", help="Time delay"),
    convention: int = typer.Option(0, "--convention", "-s", help="Index convention (0 or 1)"),
    legacy: bool = typer.Option(False, "--legacy", help="Use the legacy anti-diagonal rule"),
    force: bool = typer.Option(False, "--force", help="Allow --legacy outside s=1, tau=1"),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f"),
    output_path: Optional[Path] = typer.Option(None, "--output", "-o", help="Output file"),
) -> None:
    """Pull a component matrix back to a series."""
    with reported_errors(Command.RECONSTRUCT):
        run = RunConfig(
            command=Command.RECONSTRUCT,
            input_path=input_path,
            output_path=output_path,
            tau=tau,
            convention=convention,
            legacy=legacy,
            force=force,
            output_format=output_format,
        )
        digits = get_config().float_digits
        assert run.input_path is not None
        data = read_matrix(run.input_path)
        rows, cols = data.shape
        config = validate_config(cols + (rows - 1) * run.tau, rows, run.tau, run.convention)
        component = ComponentMatrix(data=data, config=config)
        series = legacy_dap(component, force=run.force) if run.legacy else pull_back(component)
        index = [int(k) for k in series.logical_indices()]

        with open_output(run.output_path) as out:
            if run.output_format is OutputFormat.JSON:
                write_json(
                    {
                        "config": config.summary(),
                        "reconstruction": "legacy" if run.legacy else "pull_back",
                        "n": index,
                        "values": _floats(series.values, digits),
                    },
                    out,
                )
            else:
                write_columns_csv(["n", "value"], [index, series.values], out, digits)
        err_console.print(" ".join(f"{k}={v}" for k, v in config.summary().items()))


@app.command("verify")
def verify_cmd(
    suite: Optional[list[str]] = typer.Option(
        None, "--suite", help=f"Suite to run, repeatable ({', '.join(SUITES)})"
    ),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed, defaults to GDAP_SEED"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Random configurations per suite"),
    d: Optional[int] = typer.Option(None, "--d", help="Rows for unit-cardinality"),
    m: Optional[int] = typer.Option(None, "--m", help="Columns for unit-cardinality"),
) -> None:
    """Run the self-checking invariant suites."""
    with reported_errors(Command.VERIFY):
        RunConfig(command=Command.VERIFY)
        config = get_config()
        unknown = [name for name in suite or [] if name not in SUITES]
        if unknown:
            raise GdapValidationError(
                f"unknown suite(s): {', '.join(unknown)}", {"available": list(SUITES)}
            )
        if (d is None) != (m is None):
            raise GdapValidationError("--d and --m must be given together", {"d": d, "m": m})
        if d is not None and m is not None and (d < 1 or m < 1):
            raise InvalidDimensionError(f"--d and --m must be >= 1, got {d}x{m}", {"d": d, "m": m})
        if trials is not None and trials < 1:
            raise GdapValidationError(f"--trials must be >= 1, got {trials}", {"trials": trials})

        run_seed = config.seed if seed is None else seed
        run_trials = config.verify_trials if trials is None else trials
        params = {"d": d, "m": m} if d is not None else {}
        results = run_suites(suite or None, run_seed, run_trials, **params)

        result_table = Table(title=f"gdap verify (seed={run_seed}, trials={run_trials})")
        result_table.add_column("Suite", style="cyan", no_wrap=True)
        result_table.add_column("Status", no_wrap=True)
        result_table.add_column("Checks", justify="right")
        result_table.add_column("Failures", justify="right")
        result_table.add_column("Detail", overflow="fold")
        for result in results:
            result_table.add_row(
                result.name,
                "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]",
                str(result.checks),
                str(result.failures),
                json.dumps(result.detail, default=str),
            )
        console.print(result_table)

        failed = [r.name for r in results if not r.passed]
        console.print(f"{len(results) - len(failed)}/{len(results)} suites passed")
        if failed:
            raise VerificationFailedError(
                f"{len(failed)} suite(s) failed: {', '.join(failed)}", {"failed": failed}
            )


def cli_main() -> None:
    """Entrypoint for the CLI."""
    app()


if __name__ == "__main__":
    cli_main()
