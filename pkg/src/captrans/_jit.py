"""Numba switch.

Set ``CAPTRANS_NUMBA=0`` to run every kernel through its pure-numpy path
(useful for debugging or on platforms without numba).
"""

import os

_flag = os.environ.get("CAPTRANS_NUMBA", "1").strip().lower()
NUMBA_REQUESTED = _flag not in ("0", "false", "no", "off")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None
NUMBA_ENABLED = NUMBA_REQUESTED and NUMBA_AVAILABLE

if NUMBA_AVAILABLE:
    from numba import njit
else:  # pragma: no cover

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper
