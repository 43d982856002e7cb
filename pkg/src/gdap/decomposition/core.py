"""
Component decomposition, grouping and the end-to-end series pipeline.

The pipeline is embed -> backend decomposition -> optional grouping ->
pull-back of every component. Because pull-back is linear and the backend
components add up to the trajectory matrix, the resulting component series
add up to the input series.
"""

from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from gdap.core.exceptions import (
    EmptyInputError,
    GdapValidationError,
    IndexOutOfRangeError,
    OverlappingGroupsError,
)
from gdap.core.models import ComponentMatrix, EmbeddingConfig, TimeSeries, TrajectoryMatrix
from gdap.decomposition.backends import DecompositionBackend, SvdBackend, get_backend
from gdap.embedding.core import embed, pull_back_all
from gdap.embedding.legacy import legacy_dap
from gdap.utils.logger import get_logger

logger = get_logger(__name__)


class Decomposition(BaseModel):
    """
    Additive components of one trajectory matrix.

    Attributes:
        components: Component matrices, labelled 1..r
        config: Embedding configuration shared by all components
        method: Backend identifier
        singular_values: Retained singular values (ungrouped SVD only)
        left_vectors: d x r left singular vectors (ungrouped SVD only)
        right_vectors: m x r right singular vectors (ungrouped SVD only)
        sources: Original component labels merged into each component
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    components: tuple[ComponentMatrix, ...]
    config: EmbeddingConfig
    method: str = "svd"
    singular_values: Optional[np.ndarray] = None
    left_vectors: Optional[np.ndarray] = None
    right_vectors: Optional[np.ndarray] = None
    sources: tuple[tuple[int, ...], ...] = ()

    @model_validator(mode="after")
    def _check_components(self) -> "Decomposition":
        if not self.components:
            raise EmptyInputError("a decomposition needs at least one component")
        if self.sources and len(self.sources) != len(self.components):
            raise GdapValidationError(
                "sources must list one label tuple per component",
                {"components": len(self.components), "sources": len(self.sources)},
            )
        return self

    @property
    def r(self) -> int:
        """Number of components."""
        return len(self.components)

    def total(self) -> np.ndarray:
        """Sum of all component matrices."""
        out = np.zeros(self.config.shape, dtype=np.float64)
        for comp in self.components:
            out += comp.data
        return out

    def energies(self) -> np.ndarray:
        """Squared Frobenius norm of every component."""
        return np.array([float(np.sum(c.data**2)) for c in self.components])

    def energy_fractions(self) -> np.ndarray:
        """Share of total component energy carried by each component."""
        energies = self.energies()
        total = float(energies.sum())
        if total == 0.0:
            return np.zeros_like(energies)
        return energies / total

    def relative_error(self, matrix: TrajectoryMatrix) -> float:
        """Frobenius relative error between the component sum and a matrix."""
        scale = float(np.linalg.norm(matrix.data))
        err = float(np.linalg.norm(self.total() - matrix.data))
        return err / scale if scale > 0.0 else err


class Grouping(BaseModel):
    """
    Disjoint sets of component labels to merge.

    Labels not listed in any group form an implicit residual group.

    Attributes:
        groups: Label sets, in output order
    """

    model_config = ConfigDict(frozen=True)

    groups: tuple[tuple[int, ...], ...] = Field(default=())

    @field_validator("groups", mode="before")
    @classmethod
    def _normalize(cls, v: Any) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(int(label) for label in group)) for group in v)

    @model_validator(mode="after")
    def _check_disjoint(self) -> "Grouping":
        seen: set[int] = set()
        for group in self.groups:
            if not group:
                raise EmptyInputError("groups must not be empty")
            for label in group:
                if label < 1:
                    raise IndexOutOfRangeError(
                        f"component labels start at 1, got {label}", {"label": label}
                    )
                if label in seen:
                    raise OverlappingGroupsError(
                        f"component {label} appears in more than one group", {"label": label}
                    )
                seen.add(label)
        return self

    @classmethod
    def parse(cls, text: str) -> "Grouping":
        """
        Parse a grouping string such as "1,2;3;5-7".

        Groups are separated by ';', labels by ',' and "a-b" is an inclusive
        range.

        Raises:
            GdapValidationError: If a label is not an integer
        """
        groups: list[list[int]] = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            labels: list[int] = []
            for item in chunk.split(","):
                item = item.strip()
                try:
                    if "-" in item:
                        lo, hi = (int(p) for p in item.split("-", 1))
                        labels.extend(range(lo, hi + 1))
                    else:
                        labels.append(int(item))
                except ValueError:
                    raise GdapValidationError(
                        f"invalid label {item!r} in grouping {text!r}", {"grouping": text}
                    ) from None
            groups.append(labels)
        return cls(groups=groups)

    def labels(self) -> set[int]:
        return {label for group in self.groups for label in group}


class DecompositionResult(BaseModel):
    """
    Everything produced by one run of the series pipeline.

    Attributes:
        series: Input series
        trajectory: Its trajectory matrix
        decomposition: Components after optional grouping
        components: Pulled-back component series, one per component
        reconstruction: "pull_back" or "legacy"
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    series: TimeSeries
    trajectory: TrajectoryMatrix
    decomposition: Decomposition
    components: tuple[TimeSeries, ...]
    reconstruction: str = "pull_back"

    def residual(self) -> np.ndarray:
        """Input series minus the sum of the component series."""
        out = self.series.values.copy()
        for comp in self.components:
            out -= comp.values
        return out


def svd_elementary(
    matrix: TrajectoryMatrix,
    backend: Optional[DecompositionBackend] = None,
) -> Decomposition:
    """
    Split a trajectory matrix into rank-one SVD components.

    Args:
        matrix: Trajectory matrix
        backend: SVD backend instance (defaults to one built from config)

    Returns:
        Components ordered by non-increasing singular value

    Raises:
        NumericalFailureError: If the SVD does not converge
    """
    return decompose_matrix(matrix, backend or SvdBackend())


def decompose_matrix(matrix: TrajectoryMatrix, backend: DecompositionBackend) -> Decomposition:
    """
    Run any backend and wrap its output as a Decomposition.

    Args:
        matrix: Trajectory matrix
        backend: Backend instance

    Returns:
        Decomposition labelled 1..r
    """
    result = backend.decompose(matrix)
    components = tuple(
        ComponentMatrix(data=data, config=matrix.config, label=k)
        for k, data in enumerate(result.components, start=1)
    )
    logger.info("matrix_decomposed", method=backend.name, r=len(components))
    return Decomposition(
        components=components,
        config=matrix.config,
        method=backend.name,
        singular_values=result.singular_values,
        left_vectors=result.left_vectors,
        right_vectors=result.right_vectors,
        sources=tuple((k,) for k in range(1, len(components) + 1)),
    )


def group_components(dec: Decomposition, grouping: Grouping) -> Decomposition:
    """
    Merge components by summing the members of each group.

    Components not named by any group are summed into a trailing residual
    component. The result carries no singular values or vectors; use
    ``energy_fractions()`` for the share of each merged component.

    Args:
        dec: Source decomposition
        grouping: Disjoint label sets within [1, r]

    Returns:
        One component per group, plus the residual if any label is unassigned

    Raises:
        IndexOutOfRangeError: If a label exceeds r
        OverlappingGroupsError: If groups share a label
    """
    for label in grouping.labels():
        if label > dec.r:
            raise IndexOutOfRangeError(
                f"component {label} does not exist; the decomposition has {dec.r}",
                {"label": label, "r": dec.r},
            )
    old_sources = dec.sources or tuple((k,) for k in range(1, dec.r + 1))
    merged = list(grouping.groups)
    residual = tuple(k for k in range(1, dec.r + 1) if k not in grouping.labels())
    if residual:
        merged.append(residual)

    components: list[ComponentMatrix] = []
    sources: list[tuple[int, ...]] = []
    for new_label, group in enumerate(merged, start=1):
        data = np.zeros(dec.config.shape, dtype=np.float64)
        origin: list[int] = []
        for label in group:
            data += dec.components[label - 1].data
            origin.extend(old_sources[label - 1])
        components.append(ComponentMatrix(data=data, config=dec.config, label=new_label))
        sources.append(tuple(sorted(origin)))

    logger.info("components_grouped", groups=len(grouping.groups), residual=bool(residual))
    # merged components are no longer rank-one terms, so the SVD factors no longer apply
    return dec.model_copy(
        update={
            "components": tuple(components),
            "sources": tuple(sources),
            "singular_values": None,
            "left_vectors": None,
            "right_vectors": None,
        }
    )


def run_pipeline(
    series: TimeSeries,
    d: int,
    tau: int,
    grouping: Optional[Grouping] = None,
    backend: str = "svd",
    legacy: bool = False,
    force: bool = False,
) -> DecompositionResult:
    """
    Embed, decompose, group and reconstruct a series.

    Args:
        series: Input series
        d: Embedding dimension
        tau: Time delay
        grouping: Optional grouping of the backend components
        backend: Backend name
        legacy: Reconstruct with the legacy anti-diagonal rule
        force: Allow the legacy rule outside (s, tau) = (1, 1)

    Returns:
        Full pipeline result
    """
    trajectory = embed(series, d, tau)
    dec = decompose_matrix(trajectory, get_backend(backend))
    if grouping is not None and grouping.groups:
        dec = group_components(dec, grouping)
    if legacy:
        components = tuple(legacy_dap(comp, force=force) for comp in dec.components)
    else:
        components = tuple(pull_back_all(dec.components))
    return DecompositionResult(
        series=series,
        trajectory=trajectory,
        decomposition=dec,
        components=components,
        reconstruction="legacy" if legacy else "pull_back",
    )


def decompose_series(
    series: TimeSeries,
    d: int,
    tau: int,
    grouping: Optional[Grouping] = None,
    **options: Any,
) -> list[TimeSeries]:
    """
    Decompose a series into component series that add up to it.

    Args:
        series: Input series
        d: Embedding dimension
        tau: Time delay
        grouping: Optional grouping of the backend components
        **options: backend, legacy, force (see :func:`run_pipeline`)

    Returns:
        Component series in component order
    """
    return list(run_pipeline(series, d, tau, grouping, **options).components)
