"""Backend selection for the dense jet kernels.

The compiled ``_ckernels`` extension is used when it has been built;
otherwise the pure-Python ``_pykernels`` module is used.  Setting the
environment variable ``CRNORMAL_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels
from ._pykernels import layout, tri_size

__all__ = ["BACKEND", "axpy", "layout", "mul_trunc", "tri_size", "get_backend"]


def _load():
    if os.environ.get("CRNORMAL_PURE_PYTHON") == "1":
        return _pykernels, "python"
    try:
        from . import _ckernels
    except ImportError:
        return _pykernels, "python"
    return _ckernels, "cython"


_impl, BACKEND = _load()
mul_trunc = _impl.mul_trunc
axpy = _impl.axpy


def get_backend(name):
    """Return the kernel module for ``"python"`` or ``"cython"``."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
