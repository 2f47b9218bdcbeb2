"""Pure-Python subset-rank enumeration kernels.

Fallback for the compiled extension in ``_ckernels``.  Both backends
share one interface: matrices enter as per-column bitmasks (column j of
an r x n binary matrix becomes the integer sum of ``entry[i][j] << i``)
and results are plain numpy arrays.  Python integers are unbounded, so
this backend has no row-count limit; the compiled one caps rows at 64.
"""

from __future__ import annotations

import numpy as np


def rank_from_masks(masks) -> int:
    """GF(2) rank of the matrix whose columns are the given bitmasks."""
    basis: dict[int, int] = {}
    rank = 0
    for v in masks:
        v = int(v)
        while v:
            p = v.bit_length() - 1
            if p in basis:
                v ^= basis[p]
            else:
                basis[p] = v
                rank += 1
                break
    return rank


def subset_rank_tallies(masks, size: int | None = None) -> np.ndarray:
    """Tally GF(2) ranks of column-subset matrices.

    Enumerates subsets of the n columns (all subsets, or only those of
    cardinality *size*) by depth-first inclusion/exclusion, maintaining
    a row-echelon basis incrementally so each step costs one mask
    reduction instead of a full elimination.

    Returns an (n+1) x (n+1) int64 array ``out`` with ``out[c, r]`` the
    number of subsets of c columns whose submatrix has rank r.
    """
    cols = [int(v) for v in masks]
    n = len(cols)
    out = np.zeros((n + 1, n + 1), dtype=np.int64)
    want = -1 if size is None else int(size)
    if want > n:
        return out
    basis: dict[int, int] = {}

    def dfs(i: int, count: int, rank: int) -> None:
        if want >= 0 and (count > want or count + (n - i) < want):
            return
        if i == n:
            out[count, rank] += 1
            return
        dfs(i + 1, count, rank)
        v = cols[i]
        p = -1
        while v:
            p = v.bit_length() - 1
            if p in basis:
                v ^= basis[p]
            else:
                break
        if v:
            basis[p] = v
            dfs(i + 1, count + 1, rank + 1)
            del basis[p]
        else:
            dfs(i + 1, count + 1, rank)

    dfs(0, 0, 0)
    return out
