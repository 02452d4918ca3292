"""Numba switch.

Kernels are compiled with ``numba.njit`` unless numba is missing or the
environment variable ``SCARF2_DISABLE_NUMBA`` is set to a truthy value, in
which case the pure-numpy implementations are used.
"""
import os

_FALSY = ("", "0", "false", "no", "off")

try:
    import numba
except ImportError:  # pragma: no cover - numba is optional
    numba = None

NUMBA_REQUESTED = os.environ.get("SCARF2_DISABLE_NUMBA", "").strip().lower() in _FALSY
NUMBA_ENABLED = NUMBA_REQUESTED and numba is not None

numba_default = {
    "nogil": True,
    "cache": True,
    "fastmath": False,
    "boundscheck": False,
    "error_model": "numpy",
}


def njit(fn):
    """Compile ``fn`` when numba is enabled, otherwise return it unchanged."""
    if NUMBA_ENABLED:
        return numba.njit(**numba_default)(fn)
    return fn


def backend():
    return "numba" if NUMBA_ENABLED else "numpy"
