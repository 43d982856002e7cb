"""
File formats for the gdap CLI.

Series input is plain text with one sample per line; a first line that does
not parse as a number is treated as a header. Matrices are comma-separated,
one row per line. Floats are written with 17 significant digits by default,
which round-trips every 64-bit value exactly.
"""

import csv
import json
import sys
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import IO, Any, Optional

import numpy as np

from gdap.core.exceptions import SeriesIOError
from gdap.core.models import TimeSeries


def _read_lines(path: Path) -> list[str]:
    try:
        with path.open(encoding="utf-8") as fh:
            return fh.read().splitlines()
    except OSError as exc:
        raise SeriesIOError(f"cannot read {path}: {exc.strerror}", {"path": str(path)}) from exc
    except UnicodeDecodeError as exc:
        raise SeriesIOError(
            f"cannot decode {path} as UTF-8 at byte {exc.start}",
            {"path": str(path), "byte": exc.start},
        ) from exc


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_series(path: Path, convention: int = 0) -> TimeSeries:
    """
    Read a one-sample-per-line series.

    Args:
        path: Input file
        convention: Index convention of the series

    Returns:
        Validated series

    Raises:
        SeriesIOError: If the file is unreadable, not UTF-8, empty or has a non-numeric line
        NonFiniteValueError: If a sample is NaN or infinite
    """
    lines = [(i, line.strip()) for i, line in enumerate(_read_lines(path), start=1)]
    lines = [(i, line) for i, line in lines if line and not line.startswith("#")]
    if lines and not _is_number(lines[0][1]):
        lines = lines[1:]
    if not lines:
        raise SeriesIOError(f"{path} contains no samples", {"path": str(path)})
    values: list[float] = []
    for lineno, text in lines:
        if not _is_number(text):
            raise SeriesIOError(
                f"{path}:{lineno}: not a number: {text!r}",
                {"path": str(path), "line": lineno},
            )
        values.append(float(text))
    return TimeSeries(values=values, convention=convention)


def read_matrix(path: Path) -> np.ndarray:
    """
    Read a comma-separated matrix, one row per line.

    Raises:
        SeriesIOError: If the file is unreadable, not UTF-8, empty, ragged or non-numeric
    """
    rows: list[list[float]] = []
    reader = csv.reader(line for line in _read_lines(path) if line.strip())
    for lineno, fields in enumerate(reader, start=1):
        if fields[0].lstrip().startswith("#"):
            continue
        try:
            rows.append([float(f) for f in fields])
        except ValueError:
            raise SeriesIOError(
                f"{path}:{lineno}: non-numeric matrix entry", {"path": str(path), "line": lineno}
            ) from None
    if not rows:
        raise SeriesIOError(f"{path} contains no matrix rows", {"path": str(path)})
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise SeriesIOError(
            f"{path}: rows have different lengths {sorted(widths)}", {"path": str(path)}
        )
    return np.array(rows, dtype=np.float64)


def format_float(value: float, digits: int = 17) -> str:
    """Format a float with the given number of significant digits."""
    return format(float(value), f".{digits}g")


@contextmanager
def open_output(path: Optional[Path]) -> Iterator[IO[str]]:
    """
    Yield a text stream for a path, or standard output when path is None.

    Raises:
        SeriesIOError: If the file cannot be opened
    """
    if path is None:
        yield sys.stdout
        return
    try:
        fh = path.open("w", encoding="utf-8", newline="")
    except OSError as exc:
        raise SeriesIOError(f"cannot write {path}: {exc.strerror}", {"path": str(path)}) from exc
    with fh:
        yield fh


def write_matrix_csv(data: np.ndarray, stream: IO[str], digits: int = 17) -> None:
    """Write a matrix as CSV, one row per line, no trailing comma."""
    for row in data:
        stream.write(",".join(format_float(v, digits) for v in row) + "\n")


def write_columns_csv(
    header: Sequence[str],
    columns: Sequence[Sequence[Any]],
    stream: IO[str],
    digits: int = 17,
) -> None:
    """
    Write equally long columns as CSV with a header row.

    Integer columns are written as integers, everything else as floats.
    """
    stream.write(",".join(header) + "\n")
    for row in zip(*columns):
        cells = [
            str(v) if isinstance(v, (int, np.integer)) else format_float(v, digits) for v in row
        ]
        stream.write(",".join(cells) + "\n")


def write_json(payload: Any, stream: IO[str]) -> None:
    """Write a JSON document followed by a newline."""
    json.dump(payload, stream, indent=2)
    stream.write("\n")
