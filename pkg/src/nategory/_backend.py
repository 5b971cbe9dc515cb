"""Kernel backend selection.

Hot numeric scans ship in two flavours: numba ``@njit`` loops and a pure
numpy vectorized twin.  The default is numba when it imports; set
``NATEGORY_BACKEND=numpy`` to force the fallback (``numba`` to force JIT).
Kernel entry points also accept an explicit ``backend=`` argument, which is
what the test suite and the benchmark script use to exercise both paths in
one process.
"""

from __future__ import annotations

import os

_ENV_VAR = "NATEGORY_BACKEND"

try:
    from numba import njit  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def deco(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return deco


def default_backend() -> str:
    """Resolve the backend name from the environment."""
    forced = os.environ.get(_ENV_VAR, "").strip().lower()
    if forced in ("numpy", "python"):
        return "numpy"
    if forced == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError(f"{_ENV_VAR}=numba but numba is not importable")
        return "numba"
    return "numba" if HAVE_NUMBA else "numpy"


def resolve_backend(backend: str | None) -> str:
    if backend is None:
        return default_backend()
    name = backend.strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r} (expected 'numba' or 'numpy')")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return name
