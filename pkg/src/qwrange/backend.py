"""Kernel backend selection.

The compiled extension is preferred; the numpy implementation is a drop-in
fallback with identical sampling semantics.  Set ``QWRANGE_PURE_PYTHON=1``
to force the fallback (used by the benchmark and the equivalence tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("QWRANGE_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

pair_max = _impl.pair_max
pair_values = _impl.pair_values
ascent = _impl.ascent
reconstruct_pair = _kernels_py.reconstruct_pair
row_width = _kernels_py.row_width
MAX_DIM = _kernels_py.MAX_DIM

__all__ = [
    "BACKEND",
    "MAX_DIM",
    "pair_max",
    "pair_values",
    "ascent",
    "reconstruct_pair",
    "row_width",
]
