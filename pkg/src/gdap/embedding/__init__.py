"""
Embedding map, generalized pull-back and legacy reconstruction.

This package turns series into trajectory matrices and component matrices
back into series.
"""

from gdap.embedding.core import (
    QBounds,
    corollary_bounds,
    embed,
    index_map,
    occurrence_oracle,
    pull_back,
    pull_back_all,
    q_bounds,
)
from gdap.embedding.legacy import anti_diagonal_average, legacy_dap, legacy_orientation

__all__ = [
    "QBounds",
    "anti_diagonal_average",
    "corollary_bounds",
    "embed",
    "index_map",
    "legacy_dap",
    "legacy_orientation",
    "occurrence_oracle",
    "pull_back",
    "pull_back_all",
    "q_bounds",
]
