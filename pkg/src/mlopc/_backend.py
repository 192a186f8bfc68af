"""Backend selection for the hot loops.

Set ``MLOPC_NUMBA=0`` before import to force the pure-numpy path. When numba
is missing the numpy path is used regardless of the flag.
"""

import os

_FLAG = os.environ.get("MLOPC_NUMBA", "1").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba ships with the dev environment
    numba = None

USE_NUMBA = numba is not None and _FLAG not in ("0", "false", "no", "off")
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(func):
    """Compile ``func`` with numba when the numba backend is active."""
    if not USE_NUMBA:
        return func
    return numba.njit(cache=True, fastmath=False)(func)
