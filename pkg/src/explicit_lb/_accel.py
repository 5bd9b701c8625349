"""Numba dispatch.

Hot kernels are written twice: a numba ``@njit`` version and a pure numpy
version. ``USE_NUMBA`` picks one at import time. Set
``EXPLICIT_LB_DISABLE_NUMBA=1`` to force the numpy path (numba missing has the
same effect).
"""
from __future__ import annotations

import os

_FLAG = os.environ.get("EXPLICIT_LB_DISABLE_NUMBA", "").strip().lower()
DISABLED_BY_ENV = _FLAG in {"1", "true", "yes", "on"}

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is optional
    _numba = None

NUMBA_AVAILABLE = _numba is not None
USE_NUMBA = NUMBA_AVAILABLE and not DISABLED_BY_ENV


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged.

    Compilation happens even when ``USE_NUMBA`` is off so the benchmark can
    compare both paths in one process.
    """
    if _numba is None:
        return func
    return _numba.njit(cache=True)(func)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
