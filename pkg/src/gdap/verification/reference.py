"""
Reference solution tables for the (N, d, m, tau) = (27, 7, 9, 3) example.

The rows below are the published structure of the solution sets on the
type-0 rectangle (0, 6, 0, 8) and the type-1 rectangle (1, 7, 1, 9). The
published type-0 row n = 6 reads {(0,5), (1,2), (2,0)}; its first two pairs
do not satisfy 3x + y = 6, so the corrected set is listed in the table and
the printed one is kept separately for reporting.
"""

from gdap.core.models import EmbeddingConfig, validate_config
from gdap.diophantine.core import Rectangle, SolutionSet, solve_constrained

EXAMPLE_N = 27
EXAMPLE_D = 7
EXAMPLE_TAU = 3

Rows = dict[int, tuple[tuple[int, int], ...]]

REFERENCE_ROWS_TYPE0: Rows = {
    0: ((0, 0),),
    1: ((0, 1),),
    2: ((0, 2),),
    3: ((0, 3), (1, 0)),
    4: ((0, 4), (1, 1)),
    5: ((0, 5), (1, 2)),
    6: ((0, 6), (1, 3), (2, 0)),
    7: ((0, 7), (1, 4), (2, 1)),
    8: ((0, 8), (1, 5), (2, 2)),
    9: ((1, 6), (2, 3), (3, 0)),
    10: ((1, 7), (2, 4), (3, 1)),
    11: ((1, 8), (2, 5), (3, 2)),
    12: ((2, 6), (3, 3), (4, 0)),
    13: ((2, 7), (3, 4), (4, 1)),
    14: ((2, 8), (3, 5), (4, 2)),
    15: ((3, 6), (4, 3), (5, 0)),
    26: ((6, 8),),
}

MISPRINTED_ROWS_TYPE0: Rows = {
    6: ((0, 5), (1, 2), (2, 0)),
}

REFERENCE_ROWS_TYPE1: Rows = {
    1: ((1, 1),),
    2: ((1, 2),),
    3: ((1, 3),),
    4: ((1, 4), (2, 1)),
    5: ((1, 5), (2, 2)),
    6: ((1, 6), (2, 3)),
    7: ((1, 7), (2, 4), (3, 1)),
    8: ((1, 8), (2, 5), (3, 2)),
    9: ((1, 9), (2, 6), (3, 3)),
    10: ((2, 7), (3, 4), (4, 1)),
    11: ((2, 8), (3, 5), (4, 2)),
    12: ((2, 9), (3, 6), (4, 3)),
    13: ((3, 7), (4, 4), (5, 1)),
    14: ((3, 8), (4, 5), (5, 2)),
    15: ((3, 9), (4, 6), (5, 3)),
    16: ((4, 7), (5, 4), (6, 1)),
    27: ((7, 9),),
}


def example_config(s: int) -> EmbeddingConfig:
    """The (27, 7, 9, 3) example configuration under convention s."""
    return validate_config(EXAMPLE_N, EXAMPLE_D, EXAMPLE_TAU, s)


def example_table(s: int) -> list[SolutionSet]:
    """
    Full solution table of the example for every sample index.

    Returns:
        One solution set per logical index n in [s, N - 1 + s]
    """
    config = example_config(s)
    rect = Rectangle.for_embedding(config.d, config.m, s)
    return [
        solve_constrained(n, config.tau, s, rect)
        for n in range(config.first_index, config.last_index + 1)
    ]


def reference_rows(s: int) -> Rows:
    return REFERENCE_ROWS_TYPE0 if s == 0 else REFERENCE_ROWS_TYPE1


def misprinted_rows(s: int) -> Rows:
    return MISPRINTED_ROWS_TYPE0 if s == 0 else {}
