# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset-rank enumeration kernels.

Same contract as ``_pykernels`` but restricted to matrices with at most
64 rows (one machine word per column mask).  The dispatcher in
``kernels`` falls back to the pure-Python backend above that limit.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef unsigned long long u64

cdef extern from *:
    """
    static inline int wtk_msb64(unsigned long long x) {
        return 63 - __builtin_clzll(x);
    }
    """
    int wtk_msb64(u64 x) nogil


cdef int _reduce(u64* basis, u64 v, int* slot) noexcept nogil:
    # Reduce v against the echelon basis; on a nonzero residue, report
    # the free slot (leading-bit index) through *slot and return 1.
    cdef int p
    while v:
        p = wtk_msb64(v)
        if basis[p]:
            v ^= basis[p]
        else:
            slot[0] = p
            basis[p] = v
            return 1
    return 0


def rank_from_masks(masks):
    """GF(2) rank of the matrix whose columns are the given bitmasks."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] m = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef u64 basis[64]
    cdef int i, slot, rank = 0
    for i in range(64):
        basis[i] = 0
    for i in range(m.shape[0]):
        if _reduce(basis, m[i], &slot):
            rank += 1
    return rank


cdef void _dfs(u64* cols, int n, int i, int count, int rank,
               u64* basis, long long* out, int stride, int want) noexcept nogil:
    cdef int slot
    if want >= 0 and (count > want or count + (n - i) < want):
        return
    if i == n:
        out[count * stride + rank] += 1
        return
    _dfs(cols, n, i + 1, count, rank, basis, out, stride, want)
    if _reduce(basis, cols[i], &slot):
        _dfs(cols, n, i + 1, count + 1, rank + 1, basis, out, stride, want)
        basis[slot] = 0
    else:
        _dfs(cols, n, i + 1, count + 1, rank, basis, out, stride, want)


def subset_rank_tallies(masks, size=None):
    """Tally GF(2) ranks over column subsets; see the Python backend."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] m = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef int n = m.shape[0]
    cdef int want = -1 if size is None else int(size)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.zeros((n + 1, n + 1), dtype=np.int64)
    if want > n:
        return out
    cdef u64 basis[64]
    cdef int i
    for i in range(64):
        basis[i] = 0
    cdef u64* cols = <u64*> cnp.PyArray_DATA(m)
    cdef long long* po = <long long*> cnp.PyArray_DATA(out)
    with nogil:
        _dfs(cols, n, 0, 0, 0, basis, po, n + 1, want)
    return out
