"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; the numpy
fallback is always available. Both expose the same three fill functions
with bit-identical outputs, so the choice only affects speed.
"""

from __future__ import annotations

from . import _kernels_py

_BACKENDS = {"python": _kernels_py}

try:
    from . import _kernels

    _BACKENDS["cython"] = _kernels
    BACKEND = "cython"
except ImportError:
    BACKEND = "python"


def available():
    """Names of the importable backends."""
    return tuple(sorted(_BACKENDS))


def get(name=None):
    """Kernel module for the given backend name (default: the selected one)."""
    if name is None:
        name = BACKEND
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; available: {', '.join(available())}") from None
