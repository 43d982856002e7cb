"""
Core domain types and errors for gdap.

This package defines the index convention, time series, embedding
configuration and matrix types used by every other module.
"""

from gdap.core.exceptions import (
    EmptyInputError,
    GdapError,
    GdapValidationError,
    IndexOutOfRangeError,
    InvalidConventionError,
    InvalidDelayError,
    InvalidDimensionError,
    InvalidRectangleError,
    LegacyModeUnsafeError,
    NonFiniteValueError,
    NumericalFailureError,
    OverlappingGroupsError,
    SeriesIOError,
    SeriesTooShortError,
    ShapeMismatchError,
    UnsupportedBackendError,
    VerificationFailedError,
)
from gdap.core.models import (
    ComponentMatrix,
    EmbeddingConfig,
    IndexConvention,
    TimeSeries,
    TrajectoryMatrix,
    validate_config,
)

__all__ = [
    "ComponentMatrix",
    "EmbeddingConfig",
    "IndexConvention",
    "TimeSeries",
    "TrajectoryMatrix",
    "validate_config",
    "GdapError",
    "GdapValidationError",
    "EmptyInputError",
    "IndexOutOfRangeError",
    "InvalidConventionError",
    "InvalidDelayError",
    "InvalidDimensionError",
    "InvalidRectangleError",
    "LegacyModeUnsafeError",
    "NonFiniteValueError",
    "NumericalFailureError",
    "OverlappingGroupsError",
    "SeriesIOError",
    "SeriesTooShortError",
    "ShapeMismatchError",
    "UnsupportedBackendError",
    "VerificationFailedError",
]
