"""Select numba-compiled kernels or their plain Python twins.

Set ``XCLIN_DISABLE_NUMBA=1`` to run every kernel as ordinary Python over
numpy arrays.  The flag is read once, at import time.
"""
from __future__ import annotations

import os

_FLAG = os.environ.get("XCLIN_DISABLE_NUMBA", "").strip().lower()
USE_NUMBA = _FLAG not in ("1", "true", "yes", "on")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover
        USE_NUMBA = False


def kernel(fn):
    """Compile ``fn`` with ``numba.njit`` when enabled.

    The uncompiled function stays reachable as ``.py_func`` either way, which
    is what the benchmark and the fallback tests call.
    """
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    fn.py_func = fn
    return fn
