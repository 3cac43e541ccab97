"""Hot kernels, compiled when available.

The Cython build is preferred; set ``EULERMAHONIAN_PURE=1`` to force the
pure-Python reference implementation.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("EULERMAHONIAN_PURE"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

mul_trunc = _impl.mul_trunc
geom_expand = _impl.geom_expand
wreath_statistics = _impl.wreath_statistics
STAT_NAMES = python_backend.STAT_NAMES
STAT_NAMES_R2 = python_backend.STAT_NAMES_R2

__all__ = [
    "BACKEND", "mul_trunc", "geom_expand", "wreath_statistics",
    "STAT_NAMES", "STAT_NAMES_R2", "python_backend", "compiled_backend",
]
