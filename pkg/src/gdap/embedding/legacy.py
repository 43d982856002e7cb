"""
Legacy anti-diagonal reconstruction.

This is the reconstruction rule historically shipped with SGMD: it averages
the anti-diagonals of a d* x m* matrix (d* = min(d, m), m* = max(d, m)) and
ignores the time delay entirely. It coincides with :func:`pull_back` only for
1-based series embedded with tau = 1; for tau > 1 or 0-based series it
averages samples that do not belong together. It is kept so both
reconstructions can be compared, and refuses to run outside its valid regime
unless forced.
"""

import numpy as np

from gdap.core.exceptions import LegacyModeUnsafeError
from gdap.core.models import ComponentMatrix, TimeSeries
from gdap.utils.logger import get_logger

logger = get_logger(__name__)


def legacy_orientation(data: np.ndarray) -> np.ndarray:
    """
    Orient a component as d* x m* before anti-diagonal averaging.

    The historical rule transposes the component when its row count exceeds
    its column count; storage here is d x m, so the transpose is taken for
    m < d and the matrix is used as-is for m >= d.
    """
    d, m = data.shape
    return data if m >= d else data.T


def anti_diagonal_average(z_tilde: np.ndarray, length: int) -> np.ndarray:
    """
    Three-segment anti-diagonal averaging of an oriented matrix.

    For n = 1 .. d* + m* - 1 (1-based) the n-th value averages
    z_tilde[p, n - p + 1] over p in [1, n] (rising edge), [1, d*] (plateau)
    or [n - m* + 1, d*] (falling edge). Positions past d* + m* - 1 are not
    covered by any anti-diagonal and stay 0.0.

    Args:
        z_tilde: Matrix already oriented as rows <= columns
        length: Output length

    Returns:
        Averaged values, 0-based storage
    """
    d_star, m_star = z_tilde.shape
    span = d_star + m_star - 1
    out = np.zeros(length, dtype=np.float64)
    for n in range(1, min(span, length) + 1):
        if n < d_star:
            p_lo, p_hi = 1, n
        elif n <= m_star:
            p_lo, p_hi = 1, d_star
        else:
            p_lo, p_hi = n - m_star + 1, span - m_star + 1
        total = 0.0
        for p in range(p_lo, p_hi + 1):
            total += float(z_tilde[p - 1, n - p])
        out[n - 1] = total / (p_hi - p_lo + 1)
    return out


def legacy_dap(component: ComponentMatrix, force: bool = False) -> TimeSeries:
    """
    Reconstruct a series with the legacy anti-diagonal rule.

    Args:
        component: Component matrix
        force: Run even though (s, tau) != (1, 1), knowing the result is wrong

    Returns:
        Series of length N in the component's convention

    Raises:
        LegacyModeUnsafeError: If (s, tau) != (1, 1) and force is False
    """
    config = component.config
    if config.s != 1 or config.tau != 1:
        if not force:
            raise LegacyModeUnsafeError(
                "legacy reconstruction is only valid for 1-based series with tau = 1 "
                f"(got s={config.s}, tau={config.tau}); pass force to run it anyway",
                {"s": config.s, "tau": config.tau},
            )
        logger.warning("legacy_dap_forced", label=component.label, **config.summary())
    values = anti_diagonal_average(legacy_orientation(component.data), config.N)
    return TimeSeries(values=values, convention=config.convention)
