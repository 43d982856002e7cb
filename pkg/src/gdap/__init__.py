"""
gdap - generalized diagonal averaging for trajectory-matrix decompositions.

Embeds a time series into its delay trajectory matrix, decomposes the matrix
into additive components and pulls every component back to a time series with
the averaging rule that stays correct for any time delay and for both 0-based
and 1-based sample indexing. The historical anti-diagonal rule is kept as a
legacy mode so the two reconstructions can be compared.

Author: Ruslan Magana
License: Apache-2.0
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("gdap")
except PackageNotFoundError:
    __version__ = "0.0.0.dev0"

__author__ = "Ruslan Magana"
__email__ = "contact@ruslanmv.com"
__license__ = "Apache-2.0"

__all__ = [
    "__version__",
    "__author__",
    "__email__",
    "__license__",
]
