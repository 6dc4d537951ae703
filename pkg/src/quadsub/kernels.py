"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``QUADSUB_PURE_PYTHON=1`` in the environment to force the fallback.
``IMPLEMENTATION`` records which backend is active.
"""

import os

if os.environ.get("QUADSUB_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _kernels_py as _impl

    IMPLEMENTATION = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        IMPLEMENTATION = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        IMPLEMENTATION = "python"

tridiag_eigen = _impl.tridiag_eigen
poly_vandermonde = _impl.poly_vandermonde
weighted_vandermonde = _impl.weighted_vandermonde
christoffel_weights = _impl.christoffel_weights
