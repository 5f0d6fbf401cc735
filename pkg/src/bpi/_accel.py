"""Numba switch.

Set ``BPI_DISABLE_NUMBA=1`` to run every kernel on its pure-numpy path.
"""

import os

_OFF = {"1", "true", "yes", "on"}

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get("BPI_DISABLE_NUMBA", "").lower() not in _OFF


def njit(fn):
    """Compile ``fn`` with numba when available, else return it untouched."""
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)
