"""
Decomposition backends.

A backend splits a trajectory matrix M into additive components Z_k with
sum_k Z_k == M (Frobenius relative error <= 1e-10). Pull-back correctness
relies on that contract only, so any backend honoring it can be plugged in.

Only the SVD backend is implemented. The symplectic slot is registered so the
CLI and the Decomposition type already accept its name, but it raises
UnsupportedBackendError until an implementation exists.
"""

from abc import ABC, abstractmethod
from typing import NamedTuple, Optional

import numpy as np

from gdap.core.exceptions import NumericalFailureError, UnsupportedBackendError
from gdap.core.models import TrajectoryMatrix
from gdap.utils.config import get_config
from gdap.utils.logger import get_logger

logger = get_logger(__name__)


class BackendResult(NamedTuple):
    """Raw output of a backend, components ordered as the backend ranks them."""

    components: list[np.ndarray]
    singular_values: Optional[np.ndarray] = None
    left_vectors: Optional[np.ndarray] = None
    right_vectors: Optional[np.ndarray] = None


class DecompositionBackend(ABC):
    """Interface every decomposition backend implements."""

    name: str = ""

    @abstractmethod
    def decompose(self, matrix: TrajectoryMatrix) -> BackendResult:
        """
        Split a trajectory matrix into additive components.

        Args:
            matrix: Trajectory matrix to decompose

        Returns:
            Components whose sum reproduces the matrix
        """


class SvdBackend(DecompositionBackend):
    """
    Elementary rank-one components sigma_k * u_k v_k^T.

    Singular values below max(rel_tol * sigma_1, abs_tol) are dropped. Each
    pair (u_k, v_k) is sign-normalized so the largest-magnitude entry of u_k
    is non-negative.
    """

    name = "svd"

    def __init__(self, rel_tol: Optional[float] = None, abs_tol: Optional[float] = None) -> None:
        """
        Initialize the backend.

        Args:
            rel_tol: Relative drop tolerance (defaults to config.svd_rel_tol)
            abs_tol: Absolute drop tolerance (defaults to config.svd_abs_tol)
        """
        config = get_config()
        self.rel_tol = config.svd_rel_tol if rel_tol is None else rel_tol
        self.abs_tol = config.svd_abs_tol if abs_tol is None else abs_tol

    def decompose(self, matrix: TrajectoryMatrix) -> BackendResult:
        try:
            u, sigma, vt = np.linalg.svd(matrix.data, full_matrices=False)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailureError(
                f"SVD did not converge: {exc}", matrix.config.summary()
            ) from exc

        threshold = max(self.rel_tol * float(sigma[0]), self.abs_tol)
        # an all-zero matrix still yields one (zero) component
        r = max(1, int(np.count_nonzero(sigma >= threshold)))
        if r < sigma.size:
            logger.debug(
                "svd_components_dropped",
                kept=r,
                dropped=int(sigma.size - r),
                threshold=threshold,
            )

        u = u[:, :r].copy()
        vt = vt[:r, :].copy()
        sigma = sigma[:r].copy()
        for k in range(r):
            if u[int(np.argmax(np.abs(u[:, k]))), k] < 0:
                u[:, k] *= -1.0
                vt[k, :] *= -1.0

        components = [sigma[k] * np.outer(u[:, k], vt[k, :]) for k in range(r)]
        return BackendResult(
            components=components,
            singular_values=sigma,
            left_vectors=u,
            right_vectors=vt.T.copy(),
        )


class SymplecticBackend(DecompositionBackend):
    """Placeholder for symplectic-orthogonal components (SGMD)."""

    name = "symplectic"

    def decompose(self, matrix: TrajectoryMatrix) -> BackendResult:
        raise UnsupportedBackendError(
            "the symplectic backend is declared but not implemented; use 'svd'",
            {"backend": self.name},
        )


BACKENDS: dict[str, type[DecompositionBackend]] = {
    SvdBackend.name: SvdBackend,
    SymplecticBackend.name: SymplecticBackend,
}


def get_backend(name: str) -> DecompositionBackend:
    """
    Instantiate a backend by name.

    Raises:
        UnsupportedBackendError: If the name is not registered
    """
    try:
        return BACKENDS[name.lower()]()
    except KeyError:
        raise UnsupportedBackendError(
            f"unknown backend {name!r}; available: {', '.join(sorted(BACKENDS))}",
            {"backend": name},
        ) from None
