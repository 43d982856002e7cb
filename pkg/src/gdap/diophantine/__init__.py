"""
Constrained Diophantine solver for sample positions in trajectory matrices.

This package locates every copy of a sample inside a delay-embedded matrix by
solving tau * x + y = n + s * tau over the matrix's index rectangle.
"""

from gdap.diophantine.core import (
    Rectangle,
    SolutionSet,
    bounds_type0,
    bounds_type1,
    bounds_unit_delay,
    brute_force_solutions,
    count_solutions,
    solve_constrained,
    unit_delay_cardinality,
    unit_delay_solutions,
    x_bounds,
)
from gdap.diophantine.intmath import ceil_div, floor_div

__all__ = [
    "Rectangle",
    "SolutionSet",
    "bounds_type0",
    "bounds_type1",
    "bounds_unit_delay",
    "brute_force_solutions",
    "ceil_div",
    "count_solutions",
    "floor_div",
    "solve_constrained",
    "unit_delay_cardinality",
    "unit_delay_solutions",
    "x_bounds",
]
