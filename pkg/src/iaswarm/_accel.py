"""Backend selection for the compiled kernels.

Set ``IASWARM_DISABLE_NUMBA=1`` to force the pure-numpy code path. The
flag is read once at import time.
"""
import os

_DISABLED = os.environ.get("IASWARM_DISABLE_NUMBA", "").strip().lower() in (
    "1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAS_NUMBA = True
except ImportError:
    njit = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not _DISABLED


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
