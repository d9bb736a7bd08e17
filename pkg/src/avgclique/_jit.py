"""Numba switch.

Kernels are written once as plain loops over numpy arrays.  When numba is
importable and ``AVGCLIQUE_DISABLE_NUMBA`` is unset (or ``0``), they are
compiled with ``njit``; otherwise the interpreted numpy path is used.
"""
import os

_flag = os.environ.get("AVGCLIQUE_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError
    import numba

    NUMBA_ENABLED = True
except ImportError:  # pragma: no cover - depends on environment
    numba = None
    NUMBA_ENABLED = False


def njit(func):
    """Compile ``func`` with numba when enabled, else return it unchanged."""
    if NUMBA_ENABLED:
        return numba.njit(cache=True, nogil=True)(func)
    return func


def python_impl(func):
    """The interpreted body behind a possibly-jitted kernel."""
    return getattr(func, "py_func", func)
