"""
Rectangle-constrained solutions of tau * x + y = n + s * tau.

The positions (row, column) at which sample x[n] sits inside a trajectory
matrix are exactly the lattice points on the line tau * x + y = n + s * tau
that fall inside the index rectangle of the matrix. Because the coefficient
of y is 1, the line meets every integer x exactly once, so the solution set
is fully described by an interval of x values:

    x_min = max(alpha1, ceil((n + s*tau - beta2) / tau))
    x_max = min(alpha2, floor((n + s*tau - beta1) / tau))

with y = n + s*tau - x*tau. An empty set is signalled by x_min > x_max.
On the embedding rectangles (0, d-1, 0, m-1) with s = 0 and (1, d, 1, m) with
s = 1 the set is never empty for a valid sample index.
"""

from collections.abc import Iterator
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from gdap.core.exceptions import (
    IndexOutOfRangeError,
    InvalidDelayError,
    InvalidDimensionError,
    InvalidRectangleError,
)
from gdap.core.models import IndexConvention
from gdap.diophantine.intmath import ceil_div, floor_div


class Rectangle(BaseModel):
    """
    Integer rectangle alpha1 <= x <= alpha2, beta1 <= y <= beta2.

    Degenerate sides (alpha1 == alpha2 or beta1 == beta2) are accepted; they
    arise from one-row (d = 1) or one-column (m = 1) embeddings.

    Attributes:
        alpha1: Smallest x
        alpha2: Largest x
        beta1: Smallest y
        beta2: Largest y
    """

    model_config = ConfigDict(frozen=True)

    alpha1: int = Field(..., description="Smallest x")
    alpha2: int = Field(..., description="Largest x")
    beta1: int = Field(..., description="Smallest y")
    beta2: int = Field(..., description="Largest y")

    @model_validator(mode="after")
    def _check_bounds(self) -> "Rectangle":
        bounds = (self.alpha1, self.alpha2, self.beta1, self.beta2)
        if min(bounds) < 0:
            raise InvalidRectangleError(
                f"rectangle bounds must be non-negative, got {bounds}",
                {"rect": list(bounds)},
            )
        if self.alpha1 > self.alpha2 or self.beta1 > self.beta2:
            raise InvalidRectangleError(
                f"rectangle bounds are reversed: {bounds}",
                {"rect": list(bounds)},
            )
        return self

    @classmethod
    def for_embedding(cls, d: int, m: int, s: Any) -> "Rectangle":
        """
        Index rectangle of a d x m trajectory matrix under convention s.

        Returns:
            (0, d-1, 0, m-1) for s = 0 or (1, d, 1, m) for s = 1
        """
        flag = int(IndexConvention.parse(s))
        if d < 1 or m < 1:
            raise InvalidDimensionError(
                f"matrix dimensions must be >= 1, got {d}x{m}", {"d": d, "m": m}
            )
        return cls(alpha1=flag, alpha2=d - 1 + flag, beta1=flag, beta2=m - 1 + flag)

    @classmethod
    def parse(cls, text: str) -> "Rectangle":
        """
        Parse "alpha1,alpha2,beta1,beta2".

        Raises:
            InvalidRectangleError: If the text is not four integers
        """
        parts = [p.strip() for p in text.split(",")]
        try:
            a1, a2, b1, b2 = (int(p) for p in parts)
        except ValueError:
            raise InvalidRectangleError(
                f"expected four comma-separated integers, got {text!r}", {"rect": text}
            ) from None
        return cls(alpha1=a1, alpha2=a2, beta1=b1, beta2=b2)

    def contains(self, x: int, y: int) -> bool:
        """Whether (x, y) lies in the rectangle."""
        return self.alpha1 <= x <= self.alpha2 and self.beta1 <= y <= self.beta2

    def lattice_points(self) -> Iterator[tuple[int, int]]:
        """Every integer point of the rectangle, x-major."""
        for x in range(self.alpha1, self.alpha2 + 1):
            for y in range(self.beta1, self.beta2 + 1):
                yield (x, y)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.alpha1, self.alpha2, self.beta1, self.beta2)


class SolutionSet(BaseModel):
    """
    Solutions of tau * x + y = n + s * tau inside a rectangle.

    Attributes:
        n: Target index
        tau: Delay (coefficient of x)
        s: Convention flag
        rect: Generating rectangle
        points: (x, y) pairs, strictly ascending in x
    """

    model_config = ConfigDict(frozen=True)

    n: int
    tau: int
    s: int
    rect: Rectangle
    points: tuple[tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, point: object) -> bool:
        return point in self.points

    @property
    def cardinality(self) -> int:
        return len(self.points)

    @property
    def is_empty(self) -> bool:
        return not self.points

    @property
    def x_min(self) -> Optional[int]:
        return self.points[0][0] if self.points else None

    @property
    def x_max(self) -> Optional[int]:
        return self.points[-1][0] if self.points else None

    def as_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.points)

    def format(self) -> str:
        """Render as "{(x,y),(x,y),...}"."""
        return "{" + ",".join(f"({x},{y})" for x, y in self.points) + "}"


def _check_delay(tau: int) -> None:
    if tau < 1:
        raise InvalidDelayError(f"time delay must be >= 1, got {tau}", {"tau": tau})


def _check_dims(d: int, m: int) -> None:
    if d < 1 or m < 1:
        raise InvalidDimensionError(
            f"matrix dimensions must be >= 1, got {d}x{m}", {"d": d, "m": m}
        )


def x_bounds(n: int, tau: int, s: Any, rect: Rectangle) -> tuple[int, int]:
    """
    Closed-form x interval of the solution set.

    Args:
        n: Target index
        tau: Delay, >= 1
        s: Convention flag
        rect: Constraint rectangle

    Returns:
        (x_min, x_max); x_min > x_max means there is no solution

    Example:
        >>> x_bounds(9, 3, 0, Rectangle(alpha1=0, alpha2=6, beta1=0, beta2=8))
        (1, 3)
    """
    _check_delay(tau)
    rhs = n + int(IndexConvention.parse(s)) * tau
    x_min = max(rect.alpha1, ceil_div(rhs - rect.beta2, tau))
    x_max = min(rect.alpha2, floor_div(rhs - rect.beta1, tau))
    return x_min, x_max


def solve_constrained(n: int, tau: int, s: Any, rect: Rectangle) -> SolutionSet:
    """
    All solutions of tau * x + y = n + s * tau inside the rectangle.

    Returns:
        Solutions ordered by ascending x (descending y)
    """
    x_min, x_max = x_bounds(n, tau, s, rect)
    flag = int(IndexConvention.parse(s))
    rhs = n + flag * tau
    points = tuple((x, rhs - x * tau) for x in range(x_min, x_max + 1))
    return SolutionSet(n=n, tau=tau, s=flag, rect=rect, points=points)


def count_solutions(n: int, tau: int, s: Any, rect: Rectangle) -> int:
    """Number of solutions, max(0, x_max - x_min + 1)."""
    x_min, x_max = x_bounds(n, tau, s, rect)
    return max(0, x_max - x_min + 1)


def brute_force_solutions(n: int, tau: int, s: Any, rect: Rectangle) -> SolutionSet:
    """
    Solutions found by scanning every lattice point of the rectangle.

    Used as an oracle for :func:`solve_constrained`; cost is O(area).
    """
    _check_delay(tau)
    flag = int(IndexConvention.parse(s))
    rhs = n + flag * tau
    points = tuple((x, y) for x, y in rect.lattice_points() if tau * x + y == rhs)
    return SolutionSet(n=n, tau=tau, s=flag, rect=rect, points=points)


def bounds_type0(n: int, tau: int, d: int, m: int) -> tuple[int, int]:
    """
    x interval for the type-0 rectangle (0, d-1, 0, m-1).

    Returns:
        (max(0, ceil((n - m + 1) / tau)), min(d - 1, floor(n / tau)))
    """
    _check_delay(tau)
    _check_dims(d, m)
    return max(0, ceil_div(n - m + 1, tau)), min(d - 1, floor_div(n, tau))


def bounds_type1(n: int, tau: int, d: int, m: int) -> tuple[int, int]:
    """
    x interval for the type-1 rectangle (1, d, 1, m).

    Returns:
        (max(1, ceil((n + tau - m) / tau)), min(d, floor((n + tau - 1) / tau)))
    """
    _check_delay(tau)
    _check_dims(d, m)
    return max(1, ceil_div(n + tau - m, tau)), min(d, floor_div(n + tau - 1, tau))


def bounds_unit_delay(n: int, d: int, m: int) -> tuple[int, int]:
    """x interval for tau = 1, s = 1: (max(1, n + 1 - m), min(d, n))."""
    _check_dims(d, m)
    return max(1, n + 1 - m), min(d, n)


def _unit_delay_segment(n: int, d: int, m: int) -> tuple[int, int, int]:
    d_star, m_star = min(d, m), max(d, m)
    total = d_star + m_star - 1
    if not 1 <= n <= total:
        raise IndexOutOfRangeError(
            f"index {n} outside [1, {total}] for a {d}x{m} unit-delay embedding",
            {"n": n, "lo": 1, "hi": total},
        )
    return d_star, m_star, total


def unit_delay_cardinality(n: int, d: int, m: int) -> int:
    """
    Cardinality of the unit-delay, type-1 solution set by its piecewise law.

    With d* = min(d, m), m* = max(d, m) and N = d* + m* - 1 the count rises
    as n, plateaus at d*, then falls as N - n + 1.

    Raises:
        IndexOutOfRangeError: If n is outside [1, N]
    """
    _check_dims(d, m)
    d_star, m_star, total = _unit_delay_segment(n, d, m)
    if n < d_star:
        return n
    if n <= m_star:
        return d_star
    return total - n + 1


def unit_delay_solutions(n: int, d: int, m: int) -> SolutionSet:
    """
    Unit-delay, type-1 solution set built from its three-segment description.

    Rising edge (n < d*): x in [1, n]. Plateau (d* <= n <= m*): x in
    [1 + max(0, n - m), min(d, n)]. Falling edge (n > m*): x in
    [n + 1 - m, d], which for d >= m is the familiar [m* + n - N, m*].

    Raises:
        IndexOutOfRangeError: If n is outside [1, N]
    """
    _check_dims(d, m)
    d_star, m_star, _ = _unit_delay_segment(n, d, m)
    if n < d_star:
        lo, hi = 1, n
    elif n <= m_star:
        lo, hi = 1 + max(0, n - m), min(d, n)
    else:
        lo, hi = n + 1 - m, d
    rect = Rectangle(alpha1=1, alpha2=d, beta1=1, beta2=m)
    points = tuple((x, n + 1 - x) for x in range(lo, hi + 1))
    return SolutionSet(n=n, tau=1, s=1, rect=rect, points=points)
