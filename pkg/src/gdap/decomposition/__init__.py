"""
Trajectory-matrix decomposition for gdap.

This package splits trajectory matrices into additive components, groups
them, and drives the end-to-end series decomposition.
"""

from gdap.decomposition.backends import (
    BACKENDS,
    BackendResult,
    DecompositionBackend,
    SvdBackend,
    SymplecticBackend,
    get_backend,
)
from gdap.decomposition.core import (
    Decomposition,
    DecompositionResult,
    Grouping,
    decompose_matrix,
    decompose_series,
    group_components,
    run_pipeline,
    svd_elementary,
)

__all__ = [
    "BACKENDS",
    "BackendResult",
    "Decomposition",
    "DecompositionBackend",
    "DecompositionResult",
    "Grouping",
    "SvdBackend",
    "SymplecticBackend",
    "decompose_matrix",
    "decompose_series",
    "get_backend",
    "group_components",
    "run_pipeline",
    "svd_elementary",
]
