"""Selection between the numba-accelerated kernels and the pure-numpy fallback."""

import os

ENV_VAR = "BICMID_BACKEND"

try:
    import numba  # noqa: F401

    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False


def resolve_backend(name=None):
    """Return 'numba' or 'numpy'.

    Resolution order: explicit ``name`` argument, then the BICMID_BACKEND
    environment variable, then numba if importable, numpy otherwise.
    """
    if name is None:
        name = os.environ.get(ENV_VAR, "").strip().lower() or None
    if name is None:
        return "numba" if NUMBA_AVAILABLE else "numpy"
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}: expected 'numba' or 'numpy'")
    if name == "numba" and not NUMBA_AVAILABLE:
        raise RuntimeError("numba backend requested but numba is not importable")
    return name
