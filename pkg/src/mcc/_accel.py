"""Numba detection and the backend switch.

Set ``MCC_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when numba
is importable.
"""

import os

_FALSY_FLAGS = {"", "0", "false", "no", "off"}

DISABLED_BY_ENV = os.environ.get("MCC_DISABLE_NUMBA", "").strip().lower() not in _FALSY_FLAGS

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is installed in CI
    numba = None
    HAVE_NUMBA = False


def njit(func):
    """``numba.njit(cache=True)`` when numba is present, identity otherwise."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True)(func)


def default_backend():
    if HAVE_NUMBA and not DISABLED_BY_ENV:
        return "numba"
    return "numpy"
