"""Kernel backend selection.

``LINPOT_BACKEND=numpy`` forces the pure-numpy kernels; ``numba`` (the
default) uses the JIT kernels when numba imports cleanly and falls back to
numpy otherwise.  The choice is made once, at import time.
"""
import os
import warnings

_requested = os.environ.get("LINPOT_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"LINPOT_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

if _requested == "numba" and not HAVE_NUMBA:  # pragma: no cover
    warnings.warn("numba unavailable; using numpy kernels", RuntimeWarning)

BACKEND = "numba" if (_requested == "numba" and HAVE_NUMBA) else "numpy"
