"""
Domain types shared by every gdap module.

A time series carries its index convention with it: samples are stored
0-based, but every public index is *logical*, i.e. it runs over
``[s, N - 1 + s]`` for the convention flag ``s``. Trajectory and component
matrices carry the :class:`EmbeddingConfig` they were built for, so a matrix
can only ever be pulled back under the convention it was embedded with.

All models are frozen and their arrays are read-only copies, so instances can
be shared between threads freely.
"""

from enum import IntEnum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from gdap.core.exceptions import (
    EmptyInputError,
    IndexOutOfRangeError,
    InvalidConventionError,
    InvalidDelayError,
    InvalidDimensionError,
    NonFiniteValueError,
    SeriesTooShortError,
    ShapeMismatchError,
)


class IndexConvention(IntEnum):
    """
    Index convention flag ``s``.

    Attributes:
        TYPE0: Samples indexed from 0 (C, C++, Python, Rust)
        TYPE1: Samples indexed from 1 (Fortran, MATLAB, Octave)
    """

    TYPE0 = 0
    TYPE1 = 1

    @classmethod
    def parse(cls, value: Any) -> "IndexConvention":
        """
        Convert a raw flag into a convention.

        Args:
            value: 0, 1, "0", "1" or an IndexConvention

        Returns:
            Matching convention

        Raises:
            InvalidConventionError: For any other value
        """
        if isinstance(value, IndexConvention):
            return value
        if isinstance(value, bool):
            raise InvalidConventionError(
                "convention flag must be 0 or 1, not a boolean", {"s": value}
            )
        try:
            return cls(int(value))
        except (TypeError, ValueError):
            raise InvalidConventionError(
                f"convention flag must be 0 or 1, got {value!r}", {"s": value}
            ) from None


def _frozen_float_array(value: Any, ndim: int) -> np.ndarray:
    arr = np.array(value, dtype=np.float64)
    if arr.ndim != ndim:
        raise ShapeMismatchError(
            f"expected a {ndim}-dimensional array, got {arr.ndim} dimensions",
            {"shape": list(arr.shape)},
        )
    if arr.size == 0:
        raise EmptyInputError("array has no samples", {"shape": list(arr.shape)})
    finite = np.isfinite(arr)
    if not finite.all():
        bad = np.argwhere(~finite)[0].tolist()
        raise NonFiniteValueError(
            "NaN or infinite value on ingestion", {"position": bad}
        )
    arr.setflags(write=False)
    return arr


class TimeSeries(BaseModel):
    """
    Real-valued samples together with their index convention.

    Attributes:
        values: Samples in physical (0-based) storage order
        convention: Index convention; logical index n maps to storage n - s
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray = Field(..., description="Samples, 0-based storage")
    convention: IndexConvention = Field(
        default=IndexConvention.TYPE0,
        description="Index convention flag s",
    )

    @field_validator("values", mode="before")
    @classmethod
    def _coerce_values(cls, v: Any) -> np.ndarray:
        return _frozen_float_array(v, ndim=1)

    @field_validator("convention", mode="before")
    @classmethod
    def _coerce_convention(cls, v: Any) -> IndexConvention:
        return IndexConvention.parse(v)

    @classmethod
    def from_values(cls, values: Any, convention: Any = 0) -> "TimeSeries":
        """
        Build a series from any array-like.

        Args:
            values: Samples
            convention: Index convention flag

        Returns:
            Validated TimeSeries
        """
        return cls(values=values, convention=convention)

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def N(self) -> int:
        """Number of samples."""
        return len(self)

    @property
    def s(self) -> int:
        """Convention flag as a plain integer."""
        return int(self.convention)

    @property
    def first_index(self) -> int:
        """Smallest logical index, s."""
        return self.s

    @property
    def last_index(self) -> int:
        """Largest logical index, N - 1 + s."""
        return self.N - 1 + self.s

    def logical_indices(self) -> np.ndarray:
        """
        Logical index of every sample, in storage order.

        Returns:
            Integer array ``[s, ..., N - 1 + s]``
        """
        return np.arange(self.first_index, self.last_index + 1, dtype=np.int64)

    def to_physical(self, n: int) -> int:
        """
        Map a logical index to its storage position.

        Raises:
            IndexOutOfRangeError: If n is outside [s, N - 1 + s]
        """
        if not self.first_index <= n <= self.last_index:
            raise IndexOutOfRangeError(
                f"logical index {n} outside [{self.first_index}, {self.last_index}]",
                {"n": n, "lo": self.first_index, "hi": self.last_index},
            )
        return n - self.s

    def to_logical(self, i: int) -> int:
        """
        Map a storage position to its logical index.

        Raises:
            IndexOutOfRangeError: If i is outside [0, N - 1]
        """
        if not 0 <= i < self.N:
            raise IndexOutOfRangeError(
                f"storage position {i} outside [0, {self.N - 1}]",
                {"i": i, "lo": 0, "hi": self.N - 1},
            )
        return i + self.s

    def at(self, n: int) -> float:
        """Sample with logical index n."""
        return float(self.values[self.to_physical(n)])

    def with_convention(self, convention: Any) -> "TimeSeries":
        """
        Relabel the same samples under another convention.

        Args:
            convention: Target convention flag

        Returns:
            New series sharing the sample values
        """
        return TimeSeries(values=self.values, convention=convention)


class EmbeddingConfig(BaseModel):
    """
    Parameters of a delay embedding.

    Attributes:
        N: Sample count
        d: Embedding dimension (rows of the trajectory matrix)
        tau: Time delay between consecutive rows
        convention: Index convention flag s
        m: Column count, N - (d - 1) * tau (derived)
    """

    model_config = ConfigDict(frozen=True)

    N: int = Field(..., description="Sample count")
    d: int = Field(..., description="Embedding dimension")
    tau: int = Field(..., description="Time delay")
    convention: IndexConvention = Field(
        default=IndexConvention.TYPE0,
        description="Index convention flag s",
    )

    @field_validator("convention", mode="before")
    @classmethod
    def _coerce_convention(cls, v: Any) -> IndexConvention:
        return IndexConvention.parse(v)

    @model_validator(mode="after")
    def _check_geometry(self) -> "EmbeddingConfig":
        if self.d < 1:
            raise InvalidDimensionError(
                f"embedding dimension must be >= 1, got {self.d}", {"d": self.d}
            )
        if self.tau < 1:
            raise InvalidDelayError(f"time delay must be >= 1, got {self.tau}", {"tau": self.tau})
        if self.m < 1:
            raise SeriesTooShortError(
                f"N={self.N} is too short for d={self.d}, tau={self.tau}: "
                f"m = N - (d - 1) * tau = {self.m}",
                {"N": self.N, "d": self.d, "tau": self.tau, "m": self.m},
            )
        if self.d > 1 and self.m < self.tau:
            raise SeriesTooShortError(
                f"N={self.N} leaves gaps for d={self.d}, tau={self.tau}: rows span "
                f"m={self.m} samples, fewer than the delay, so some samples fall in no cell",
                {"N": self.N, "d": self.d, "tau": self.tau, "m": self.m},
            )
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def m(self) -> int:
        """Column count of the trajectory matrix."""
        return self.N - (self.d - 1) * self.tau

    @property
    def s(self) -> int:
        """Convention flag as a plain integer."""
        return int(self.convention)

    @property
    def shape(self) -> tuple[int, int]:
        """Trajectory matrix shape (d, m)."""
        return (self.d, self.m)

    @property
    def first_index(self) -> int:
        """Smallest logical sample index."""
        return self.s

    @property
    def last_index(self) -> int:
        """Largest logical sample index."""
        return self.N - 1 + self.s

    def check_index(self, n: int) -> None:
        """
        Ensure n is a logical sample index of this configuration.

        Raises:
            IndexOutOfRangeError: If n is outside [s, N - 1 + s]
        """
        if not self.first_index <= n <= self.last_index:
            raise IndexOutOfRangeError(
                f"logical index {n} outside [{self.first_index}, {self.last_index}]",
                {"n": n, "lo": self.first_index, "hi": self.last_index},
            )

    def summary(self) -> dict[str, int]:
        """(N, d, m, tau, s) as a plain dictionary."""
        return {"N": self.N, "d": self.d, "m": self.m, "tau": self.tau, "s": self.s}


def validate_config(N: int, d: int, tau: int, s: Any) -> EmbeddingConfig:
    """
    Validate raw embedding parameters and derive the column count.

    Args:
        N: Sample count
        d: Embedding dimension
        tau: Time delay
        s: Index convention flag

    Returns:
        Validated configuration with m = N - (d - 1) * tau

    Raises:
        InvalidDimensionError: If d < 1
        InvalidDelayError: If tau < 1
        InvalidConventionError: If s is not 0 or 1
        SeriesTooShortError: If m < 1, or if d > 1 and m < tau

    Example:
        >>> validate_config(27, 7, 3, 0).m
        9
    """
    if d < 1:
        raise InvalidDimensionError(f"embedding dimension must be >= 1, got {d}", {"d": d})
    if tau < 1:
        raise InvalidDelayError(f"time delay must be >= 1, got {tau}", {"tau": tau})
    convention = IndexConvention.parse(s)
    return EmbeddingConfig(N=N, d=d, tau=tau, convention=convention)


class _ConfiguredMatrix(BaseModel):
    """A dense d x m matrix bound to the embedding configuration it belongs to."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    data: np.ndarray = Field(..., description="Dense d x m values")
    config: EmbeddingConfig = Field(..., description="Embedding configuration")

    @field_validator("data", mode="before")
    @classmethod
    def _coerce_data(cls, v: Any) -> np.ndarray:
        return _frozen_float_array(v, ndim=2)

    @model_validator(mode="after")
    def _check_shape(self) -> "_ConfiguredMatrix":
        if self.data.shape != self.config.shape:
            raise ShapeMismatchError(
                f"matrix shape {self.data.shape} does not match config shape "
                f"{self.config.shape}",
                {"shape": list(self.data.shape), "expected": list(self.config.shape)},
            )
        return self

    @property
    def d(self) -> int:
        return self.config.d

    @property
    def m(self) -> int:
        return self.config.m

    def entry(self, i: int, j: int) -> float:
        """
        Entry at logical row i and column j in the matrix's own convention.

        For type-0 matrices rows run over [0, d - 1] and columns over
        [0, m - 1]; for type-1 matrices over [1, d] and [1, m].

        Raises:
            IndexOutOfRangeError: If (i, j) lies outside the matrix
        """
        s = self.config.s
        if not (s <= i <= self.d - 1 + s and s <= j <= self.m - 1 + s):
            raise IndexOutOfRangeError(
                f"entry ({i}, {j}) outside the {self.d}x{self.m} type-{s} matrix",
                {"i": i, "j": j, "d": self.d, "m": self.m, "s": s},
            )
        return float(self.data[i - s, j - s])

    def sgmd_layout(self) -> np.ndarray:
        """
        The matrix in the column-per-delay orientation used by SGMD (m x d).

        Returns:
            Transposed copy of the data
        """
        return np.ascontiguousarray(self.data.T)


class TrajectoryMatrix(_ConfiguredMatrix):
    """
    Trajectory matrix of a series.

    When built by :func:`gdap.embedding.embed`, the entry at storage
    position (i, j) holds the sample with logical index i * tau + j + s.
    """


class ComponentMatrix(_ConfiguredMatrix):
    """
    One additive component Z_k of a trajectory matrix.

    Attributes:
        label: Component index k (1-based)
    """

    label: int = Field(default=1, ge=1, description="Component index k")

    @classmethod
    def from_trajectory(cls, matrix: TrajectoryMatrix, label: int = 1) -> "ComponentMatrix":
        """
        Treat a whole trajectory matrix as a single component.

        Args:
            matrix: Trajectory matrix
            label: Component index

        Returns:
            Component sharing the matrix data and configuration
        """
        return cls(data=matrix.data, config=matrix.config, label=label)
