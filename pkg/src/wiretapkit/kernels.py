"""Backend selection for the subset-rank enumeration kernels.

The compiled Cython extension is used when it imported cleanly, the
column masks fit in 64 bits, and the ``WIRETAPKIT_PURE_PYTHON``
environment variable is unset.  Otherwise the pure-Python backend takes
over with identical semantics.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_FORCE_PURE = os.environ.get("WIRETAPKIT_PURE_PYTHON", "") not in ("", "0")

HAVE_COMPILED = _ckernels is not None and not _FORCE_PURE


def backend_name(nrows: int = 0) -> str:
    """Name of the backend that would serve a matrix with *nrows* rows."""
    if HAVE_COMPILED and nrows <= 64:
        return "compiled"
    return "python"


def _pick(nrows: int):
    if HAVE_COMPILED and nrows <= 64:
        return _ckernels
    return _pykernels


def rank_from_masks(masks, nrows: int) -> int:
    """GF(2) rank of the matrix whose columns are the given bitmasks."""
    return _pick(nrows).rank_from_masks(_coerce(masks, nrows))


def subset_rank_tallies(masks, nrows: int, size: int | None = None) -> np.ndarray:
    """(n+1) x (n+1) tally of subset cardinality vs. submatrix rank."""
    return _pick(nrows).subset_rank_tallies(_coerce(masks, nrows), size)


def _coerce(masks, nrows: int):
    if HAVE_COMPILED and nrows <= 64:
        return np.asarray(masks, dtype=np.uint64)
    return list(masks)
