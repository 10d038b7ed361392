"""Kernel backend selection.

The compiled kernels are used when numba imports cleanly; set
``CATOPS_NUMBA=0`` in the environment to force the pure-numpy path (or
``=1`` to insist on the compiled one and fail loudly if it is missing).
"""

from __future__ import annotations

import os

from . import _kernels

_cached = None


def _flag() -> str:
    return os.environ.get("CATOPS_NUMBA", "auto").strip().lower()


def kernels():
    """Module providing wigner_map / wigner_evolved_map for the active backend."""
    global _cached
    flag = _flag()
    if flag in ("0", "false", "off", "no"):
        return _kernels
    if _cached is None:
        try:
            from . import _kernels_numba as compiled
            _cached = compiled
        except ImportError:
            _cached = _kernels
            if flag in ("1", "true", "on", "yes"):
                raise
    return _cached


def active_backend() -> str:
    mod = kernels()
    return "numba" if mod.__name__.endswith("_numba") else "numpy"
