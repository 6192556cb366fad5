"""Backend switch for the integer kernels.

``GROUPDEFORM_BACKEND=numba`` (default when numba imports) compiles the loop
kernels with ``numba.njit``; ``GROUPDEFORM_BACKEND=numpy`` uses the
vectorized numpy versions.  Both are always importable so the benchmark can
compare them in one process.
"""

from __future__ import annotations

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False

_VALID = ("numba", "numpy")
_backend = os.environ.get("GROUPDEFORM_BACKEND", "numba").strip().lower() or "numba"
if _backend not in _VALID:
    raise ValueError("GROUPDEFORM_BACKEND must be one of %s, got %r" % (_VALID, _backend))
if _backend == "numba" and not HAVE_NUMBA:
    _backend = "numpy"


def njit(fn):
    """Compile with numba when available, otherwise return the Python function."""
    if HAVE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def backend() -> str:
    return _backend


def set_backend(name: str) -> str:
    """Switch backend at runtime; returns the previous one."""
    global _backend
    name = name.lower()
    if name not in _VALID:
        raise ValueError("unknown backend %r" % name)
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    old, _backend = _backend, name
    return old
