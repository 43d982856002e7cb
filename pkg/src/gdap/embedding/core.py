"""
Delay embedding and its pull-back.

``embed`` maps a series onto its d x m trajectory matrix, entry (i, j)
(storage positions) holding the sample with logical index i * tau + j + s.

``pull_back`` inverts it for any component matrix: sample n is the mean of
all entries whose embedding formula points at n. Those entries are the rows
q in [q_min, q_max], column n + s*tau - q*tau (logical, native convention),
with

    q_min = max(s, ceil((n - m + s*tau + (1 - s)) / tau))
    q_max = min(d + s - 1, floor((n + (tau - 1) * s) / tau))

This stays correct for every tau >= 1 and both conventions, unlike the
anti-diagonal rule kept in :mod:`gdap.embedding.legacy`.
"""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from gdap.core.exceptions import EmptyInputError, ShapeMismatchError
from gdap.core.models import (
    ComponentMatrix,
    EmbeddingConfig,
    TimeSeries,
    TrajectoryMatrix,
    validate_config,
)
from gdap.diophantine.core import bounds_type0, bounds_type1, bounds_unit_delay
from gdap.diophantine.intmath import ceil_div, floor_div
from gdap.utils.config import get_config
from gdap.utils.logger import get_logger

logger = get_logger(__name__)


class QBounds(BaseModel):
    """
    Row interval housing the copies of sample n.

    Attributes:
        n: Logical sample index
        q_min: First logical row holding x[n]
        q_max: Last logical row holding x[n]
    """

    model_config = ConfigDict(frozen=True)

    n: int
    q_min: int
    q_max: int

    @property
    def count(self) -> int:
        """Number of copies of x[n] in the matrix."""
        return self.q_max - self.q_min + 1

    def rows(self) -> range:
        return range(self.q_min, self.q_max + 1)


def index_map(config: EmbeddingConfig) -> np.ndarray:
    """
    Storage index of the sample held by every matrix cell.

    Returns:
        d x m int64 array with entry (i, j) = i * tau + j
    """
    rows = np.arange(config.d, dtype=np.int64)[:, None] * config.tau
    cols = np.arange(config.m, dtype=np.int64)[None, :]
    return rows + cols


def embed(series: TimeSeries, d: int, tau: int) -> TrajectoryMatrix:
    """
    Build the trajectory matrix of a series.

    Args:
        series: Input series, convention taken from the series
        d: Embedding dimension
        tau: Time delay

    Returns:
        d x m trajectory matrix with m = N - (d - 1) * tau

    Raises:
        InvalidDimensionError: If d < 1
        InvalidDelayError: If tau < 1
        SeriesTooShortError: If m < 1
    """
    config = validate_config(series.N, d, tau, series.convention)
    data = series.values[index_map(config)]
    logger.debug("embedding_built", **config.summary())
    return TrajectoryMatrix(data=data, config=config)


def q_bounds(n: int, config: EmbeddingConfig) -> QBounds:
    """
    Rows of the trajectory matrix that hold sample n.

    Args:
        n: Logical sample index
        config: Embedding configuration

    Returns:
        Non-empty row interval

    Raises:
        IndexOutOfRangeError: If n is outside [s, N - 1 + s]
    """
    config.check_index(n)
    s, tau = config.s, config.tau
    q_min = max(s, ceil_div(n - config.m + s * tau + (1 - s), tau))
    q_max = min(config.d + s - 1, floor_div(n + (tau - 1) * s, tau))
    return QBounds(n=n, q_min=q_min, q_max=q_max)


def corollary_bounds(n: int, config: EmbeddingConfig) -> tuple[int, int]:
    """
    Row interval from the convention-specific closed forms.

    Uses the type-0 bounds for s = 0, the unit-delay bounds for
    (s, tau) = (1, 1) and the type-1 bounds otherwise. Always equal to
    :func:`q_bounds`.
    """
    config.check_index(n)
    if config.s == 0:
        return bounds_type0(n, config.tau, config.d, config.m)
    if config.tau == 1:
        return bounds_unit_delay(n, config.d, config.m)
    return bounds_type1(n, config.tau, config.d, config.m)


def occurrence_oracle(n: int, config: EmbeddingConfig) -> set[tuple[int, int]]:
    """
    Positions of sample n found by scanning every cell.

    Args:
        n: Logical sample index
        config: Embedding configuration

    Returns:
        Logical (row, column) pairs in the matrix's native convention

    Raises:
        IndexOutOfRangeError: If n is outside [s, N - 1 + s]
    """
    config.check_index(n)
    s = config.s
    rows, cols = np.nonzero(index_map(config) + s == n)
    return {(int(i) + s, int(j) + s) for i, j in zip(rows, cols)}


def _pull_back_data(data: np.ndarray, config: EmbeddingConfig) -> np.ndarray:
    s, tau = config.s, config.tau
    out = np.empty(config.N, dtype=np.float64)
    for n in range(config.first_index, config.last_index + 1):
        b = q_bounds(n, config)
        rows = np.arange(b.q_min, b.q_max + 1, dtype=np.int64)
        cols = n + s * tau - rows * tau
        picked = data[rows - s, cols - s]
        if picked.size == 1:
            out[n - s] = picked[0]
            continue
        total = 0.0
        for value in picked:
            total += float(value)
        out[n - s] = total / picked.size
    return out


def pull_back(component: ComponentMatrix) -> TimeSeries:
    """
    Rebuild the series carried by one component matrix.

    Each sample is the arithmetic mean of every entry that houses it; the
    result uses the component's own convention and has length N.

    Args:
        component: Component (or whole trajectory) matrix

    Returns:
        Series of length N

    Raises:
        ShapeMismatchError: If the data does not match the configuration
    """
    config = component.config
    if component.data.shape != config.shape:
        raise ShapeMismatchError(
            f"component {component.label} has shape {component.data.shape}, "
            f"expected {config.shape}",
            {"label": component.label},
        )
    values = _pull_back_data(component.data, config)
    logger.debug("pull_back_done", label=component.label, **config.summary())
    return TimeSeries(values=values, convention=config.convention)


def pull_back_all(
    components: Sequence[ComponentMatrix],
    workers: Optional[int] = None,
) -> list[TimeSeries]:
    """
    Pull back several components sharing one configuration.

    Args:
        components: Components in output order
        workers: Thread count; defaults to the configured ``workers``

    Returns:
        One series per component, same order as the input

    Raises:
        EmptyInputError: If no component is given
        ShapeMismatchError: If the components disagree on their configuration
    """
    if not components:
        raise EmptyInputError("pull_back_all needs at least one component")
    config = components[0].config
    for comp in components[1:]:
        if comp.config != config:
            raise ShapeMismatchError(
                f"component {comp.label} was built for {comp.config.summary()}, "
                f"expected {config.summary()}",
                {"label": comp.label},
            )
    n_workers = workers if workers is not None else get_config().workers
    if n_workers <= 1 or len(components) == 1:
        return [pull_back(comp) for comp in components]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(pull_back, components))
