"""Hot numeric kernels with a numba backend and a pure-numpy fallback.

The active backend is fixed at import time by bicmid.backend.resolve_backend
(BICMID_BACKEND environment variable, defaulting to numba when available).
Both backends expose the same three functions with identical contracts.
"""

from .. import backend

ACTIVE_BACKEND = backend.resolve_backend()


def load_backend(name):
    """Import and return a kernel module by name, independent of the default."""
    name = backend.resolve_backend(name)
    if name == "numba":
        from . import numba_backend as impl
    else:
        from . import numpy_backend as impl
    return impl


_impl = load_backend(ACTIVE_BACKEND)

bcjr_llrs = _impl.bcjr_llrs
demap_llrs = _impl.demap_llrs
invert_distortion = _impl.invert_distortion

__all__ = [
    "ACTIVE_BACKEND",
    "load_backend",
    "bcjr_llrs",
    "demap_llrs",
    "invert_distortion",
]
