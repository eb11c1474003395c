"""Optional numba acceleration.

Set ``DWTUNNEL_NO_NUMBA=1`` to force the pure-numpy code paths (also used
automatically when numba is not importable).
"""
import os

_DISABLED = os.environ.get("DWTUNNEL_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

# avoid probing the (often outdated) TBB layer on first parallel launch
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit, prange

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False
    prange = range

    def njit(*args, **kwargs):
        # bare @njit or @njit(...) both return the function untouched
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda func: func


USE_NUMBA = HAS_NUMBA
