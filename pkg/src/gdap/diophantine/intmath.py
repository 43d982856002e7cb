"""
Mathematical floor and ceiling of integer quotients.

Index bounds such as ceil((n - m + 1) / tau) have negative numerators near the
start of a series. Truncating division (C, Fortran, ``int(a / b)``) rounds
those toward zero and admits lattice points outside the matrix. Both helpers
round toward -inf / +inf for every sign of the numerator and work on exact
integers, never through floating point.
"""

from gdap.core.exceptions import InvalidDelayError


def _check_divisor(b: int) -> None:
    if b < 1:
        raise InvalidDelayError(f"divisor must be a positive integer, got {b}", {"divisor": b})


def floor_div(a: int, b: int) -> int:
    """
    Largest integer q with q * b <= a.

    Args:
        a: Numerator (any sign)
        b: Positive divisor

    Returns:
        floor(a / b)

    Example:
        >>> floor_div(-7, 3)
        -3
    """
    _check_divisor(b)
    q, _ = divmod(int(a), int(b))
    return q


def ceil_div(a: int, b: int) -> int:
    """
    Smallest integer q with q * b >= a.

    Args:
        a: Numerator (any sign)
        b: Positive divisor

    Returns:
        ceil(a / b)

    Example:
        >>> ceil_div(-7, 3)
        -2
    """
    _check_divisor(b)
    q, r = divmod(int(a), int(b))
    return q + 1 if r else q
