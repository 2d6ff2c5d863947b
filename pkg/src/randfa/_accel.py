"""Numba switch.

Set ``RANDFA_DISABLE_NUMBA=1`` before import to route every kernel through its
pure-numpy/Python fallback. Both paths are always importable so tests and the
benchmark can compare them in one process.
"""

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

_FLAG = os.environ.get("RANDFA_DISABLE_NUMBA", "").strip().lower()
USE_NUMBA = HAVE_NUMBA and _FLAG not in ("1", "true", "yes", "on")


def jit(func):
    """``numba.njit(cache=True, nogil=True)`` when numba is present, identity otherwise."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)
