"""
Exception classes for gdap.

Every failure the toolkit reports derives from :class:`GdapError`. Each class
carries a stable machine-readable ``code`` and the process ``exit_code`` the
CLI uses for it (0 ok, 1 verification failure, 2 I/O, 3 validation,
4 numerical).
"""

from typing import Any, Optional


class GdapError(Exception):
    """
    Base exception for all gdap errors.

    Attributes:
        message: Error message describing what went wrong
        details: Structured context (offending values, expected ranges)
    """

    code = "gdap_error"
    exit_code = 3

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None) -> None:
        """
        Initialize the error.

        Args:
            message: Error message
            details: Additional structured context
        """
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        """
        Return string representation of the error.

        Returns:
            Message prefixed with the error code
        """
        return f"[{self.code}] {self.message}"

    def to_dict(self) -> dict[str, Any]:
        """
        Machine-readable form of the error.

        Returns:
            Dictionary with code, exit code, message and details
        """
        return {
            "error": self.code,
            "exit_code": self.exit_code,
            "message": self.message,
            "details": self.details,
        }


class GdapValidationError(GdapError):
    """Raised when inputs violate a documented precondition."""

    code = "validation_error"
    exit_code = 3


class InvalidDimensionError(GdapValidationError):
    """Embedding dimension d is not a positive integer."""

    code = "invalid_dimension"


class InvalidDelayError(GdapValidationError):
    """Time delay tau is not a positive integer."""

    code = "invalid_delay"


class SeriesTooShortError(GdapValidationError):
    """
    The series cannot be embedded without losing samples.

    Raised when N < (d - 1) * tau + 1 (no column at all), or when d > 1 and
    m < tau (samples between consecutive rows appear in no cell).
    """

    code = "series_too_short"


class InvalidConventionError(GdapValidationError):
    """Index convention flag outside {0, 1}."""

    code = "invalid_convention"


class IndexOutOfRangeError(GdapValidationError):
    """A logical index or component label lies outside its valid range."""

    code = "index_out_of_range"


class ShapeMismatchError(GdapValidationError):
    """A matrix does not have the d x m shape its configuration requires."""

    code = "shape_mismatch"


class EmptyInputError(GdapValidationError):
    """An operation that needs at least one item received none."""

    code = "empty_input"


class OverlappingGroupsError(GdapValidationError):
    """A component label was assigned to more than one group."""

    code = "overlapping_groups"


class InvalidRectangleError(GdapValidationError):
    """Rectangle bounds are negative or reversed."""

    code = "invalid_rectangle"


class LegacyModeUnsafeError(GdapValidationError):
    """
    The legacy anti-diagonal reconstruction was requested outside (s, tau) = (1, 1).

    The legacy formula ignores the time delay and assumes 1-based indexing, so
    it is only run in that regime when explicitly forced.
    """

    code = "legacy_mode_unsafe"


class NonFiniteValueError(GdapValidationError):
    """A NaN or infinite sample was found on ingestion."""

    code = "non_finite_value"


class UnsupportedBackendError(GdapValidationError):
    """The requested decomposition backend is unknown or not implemented."""

    code = "unsupported_backend"


class SeriesIOError(GdapError):
    """Raised when an input file cannot be read or parsed."""

    code = "io_error"
    exit_code = 2


class NumericalFailureError(GdapError):
    """Raised when a numerical kernel (SVD) fails to converge."""

    code = "numerical_failure"
    exit_code = 4


class VerificationFailedError(GdapError):
    """Raised when one or more verification suites fail."""

    code = "verification_failed"
    exit_code = 1
