"""Linear block codes, Reed-Muller construction, and generalized Hamming weights.

The generalized Hamming weight d_r of a code is the smallest support
size of any r-dimensional subcode.  For the coset construction in
``wiretap``, the weights of the dual of the base code pinpoint exactly
how many bits an eavesdropper's worst-case erasure pattern leaks.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import bitlinalg, kernels
from .bitlinalg import BitMatrix

DEFAULT_ENUM_CAP = 24
DEFAULT_GHW_EXACT_CAP = 20
# Above this blocklength the Reed-Muller weight hierarchy comes from the
# monomial-support construction instead of exhaustive subset search.
GHW_CLOSED_FORM_THRESHOLD = 20


@dataclass(frozen=True)
class LinearCode:
    """A binary (n, dim) code given by a full-row-rank generator matrix."""

    n: int
    dim: int
    generator: BitMatrix
    label: str = ""
    rm_params: tuple[int, int] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.generator.rows != self.dim or self.generator.cols != self.n:
            raise ValueError(
                f"generator shape {self.generator.rows}x{self.generator.cols} "
                f"does not match (dim={self.dim}, n={self.n})"
            )
        if self.dim > self.n:
            raise ValueError(f"dim {self.dim} exceeds blocklength {self.n}")
        if bitlinalg.rank(self.generator) != self.dim:
            raise ValueError("generator matrix does not have full row rank")

    @property
    def rate(self) -> float:
        return self.dim / self.n

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "dim": self.dim,
            "generator": self.generator.to_strings(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "LinearCode":
        return cls(
            n=d["n"],
            dim=d["dim"],
            generator=BitMatrix.from_strings(d["generator"]),
            label=d.get("label", ""),
        )

    @classmethod
    def from_json(cls, s: str) -> "LinearCode":
        return cls.from_dict(json.loads(s))


@dataclass(frozen=True)
class GHWProfile:
    """Weight hierarchy d_1 < d_2 < ... < d_dim of a code.

    ``source`` records which path produced the numbers: "exact" for the
    subset search, "monomial" for the Reed-Muller closed construction.
    """

    weights: tuple[int, ...]
    source: str = "exact"

    def __post_init__(self):
        w = self.weights
        if any(w[i] >= w[i + 1] for i in range(len(w) - 1)):
            raise ValueError(f"weights must be strictly increasing, got {w}")

    def leakage_at(self, mu: int) -> int:
        """Number of weights <= mu: the worst-case leakage in bits."""
        return sum(1 for d in self.weights if d <= mu)


def _monomial_row(m: int, support: tuple[int, ...]) -> np.ndarray:
    """Evaluation vector of prod_{i in support} x_i over all 2^m points.

    Point j assigns x_i the bit (j >> (m-1-i)) & 1, so variable 0 is the
    leftmost bit of the point index, matching the global bit convention.
    """
    pts = np.arange(2**m)
    row = np.ones(2**m, dtype=np.uint8)
    for i in support:
        row &= ((pts >> (m - 1 - i)) & 1).astype(np.uint8)
    return row


def _monomials(u: int, m: int) -> list[tuple[int, ...]]:
    """Monomial supports of degree <= u in graded lexicographic order."""
    out: list[tuple[int, ...]] = []
    for deg in range(u + 1):
        out.extend(itertools.combinations(range(m), deg))
    return out


def reed_muller(order: int, degree: int) -> LinearCode:
    """The Reed-Muller code RM(order, degree): n = 2^degree,
    dim = sum_{i<=order} C(degree, i).

    Generator rows are evaluation vectors of monomials in graded
    lexicographic order, so the matrix is deterministic.
    """
    u, m = order, degree
    if m < 1:
        raise ValueError(f"degree must be >= 1, got {m}")
    if not 0 <= u <= m:
        raise ValueError(f"order must satisfy 0 <= order <= degree, got ({u}, {m})")
    rows = [_monomial_row(m, s) for s in _monomials(u, m)]
    gen = BitMatrix(np.array(rows, dtype=np.uint8))
    return LinearCode(
        n=2**m,
        dim=sum(comb(m, i) for i in range(u + 1)),
        generator=gen,
        label=f"RM({u},{m})",
        rm_params=(u, m),
    )


def dual(c: LinearCode) -> LinearCode:
    """The dual code: generator rows span the null space of c's generator."""
    ns = bitlinalg.null_space(c.generator)
    canon, _ = bitlinalg.rref(ns)
    rm = None
    label = f"{c.label}^perp" if c.label else ""
    if c.rm_params is not None:
        u, m = c.rm_params
        if m - u - 1 >= 0:
            rm = (m - u - 1, m)
            label = f"RM({m - u - 1},{m})"
    return LinearCode(n=c.n, dim=c.n - c.dim, generator=canon, label=label, rm_params=rm)


def enumerate_codewords(c: LinearCode, cap: int = DEFAULT_ENUM_CAP) -> np.ndarray:
    """All 2^dim codewords as a (2^dim, n) uint8 array.

    Row t is the XOR combination of generator rows selected by the
    dim-bit binary expansion of t (leftmost bit selects row 0).
    """
    if c.dim > cap:
        raise ValueError(f"dim {c.dim} exceeds enumeration cap {cap} (2^{c.dim} codewords)")
    if c.dim == 0:
        return np.zeros((1, c.n), dtype=np.uint8)
    counters = np.arange(2**c.dim, dtype=np.uint64)
    shifts = np.arange(c.dim - 1, -1, -1, dtype=np.uint64)
    bits = ((counters[:, None] >> shifts[None, :]) & 1).astype(np.uint64)
    return ((bits @ c.generator.a.astype(np.uint64)) & 1).astype(np.uint8)


def min_rank_by_subset_size(g: BitMatrix) -> np.ndarray:
    """For t = 0..n, the minimum GF(2) rank over all t-column submatrices."""
    n = g.cols
    tallies = kernels.subset_rank_tallies(bitlinalg.column_masks(g), g.rows)
    out = np.zeros(n + 1, dtype=np.int64)
    for t in range(n + 1):
        nz = np.nonzero(tallies[t])[0]
        out[t] = nz[0] if nz.size else 0
    return out


def ghw_exact(c: LinearCode, cap: int = DEFAULT_GHW_EXACT_CAP) -> GHWProfile:
    """Weight hierarchy by exhaustive search over coordinate subsets.

    Uses the identity: the largest subcode supported inside a coordinate
    set S has dimension dim - rank(G restricted to the complement of S),
    so d_r is the smallest |S| for which that dimension reaches r.
    """
    if c.n > cap:
        raise ValueError(f"blocklength {c.n} exceeds exact-search cap {cap}")
    minrank = min_rank_by_subset_size(c.generator)
    weights = []
    for r in range(1, c.dim + 1):
        for mu in range(1, c.n + 1):
            if c.dim - minrank[c.n - mu] >= r:
                weights.append(mu)
                break
    return GHWProfile(weights=tuple(weights), source="exact")


def _ghw_rm_monomial(u: int, m: int) -> GHWProfile:
    """Reed-Muller hierarchy from minimal-support monomial subcodes.

    An r-dimensional span of monomials has support equal to the union of
    their evaluation supports; RM codes attain every d_r on such spans
    (they satisfy the chain condition), so a greedy minimal-growth
    ordering of the monomials yields the full hierarchy.  Ties prefer
    higher degree (smaller supports first), then graded-lex order.
    """
    npoints = 2**m
    supports = []
    for deg in range(u, -1, -1):
        for s in itertools.combinations(range(m), deg):
            mask = 0
            for i in s:
                mask |= 1 << (m - 1 - i)
            pts = frozenset(p for p in range(npoints) if (p & mask) == mask)
            supports.append(pts)
    covered: set[int] = set()
    remaining = list(range(len(supports)))
    weights = []
    while remaining:
        best = min(remaining, key=lambda j: (len(supports[j] - covered), j))
        covered |= supports[best]
        remaining.remove(best)
        weights.append(len(covered))
    return GHWProfile(weights=tuple(weights), source="monomial")


def ghw_reed_muller(order: int, degree: int, method: str = "auto") -> GHWProfile:
    """Weight hierarchy of RM(order, degree).

    method "auto" runs the exhaustive search at desk scale
    (2^degree <= 20) and the monomial construction above it; "exact" and
    "monomial" force a path.  The profile's ``source`` records which ran.
    """
    u, m = order, degree
    if m < 1 or not 0 <= u <= m:
        raise ValueError(f"invalid Reed-Muller parameters ({u}, {m})")
    if method == "auto":
        method = "exact" if 2**m <= GHW_CLOSED_FORM_THRESHOLD else "monomial"
    if method == "exact":
        return ghw_exact(reed_muller(u, m), cap=2**m)
    if method == "monomial":
        return _ghw_rm_monomial(u, m)
    raise ValueError(f"unknown method {method!r}")


def ghw_of(c: LinearCode, cap: int = DEFAULT_GHW_EXACT_CAP) -> GHWProfile:
    """Hierarchy of an arbitrary code: closed path for RM codes, exact else."""
    if c.dim == 0:
        return GHWProfile(weights=())
    if c.rm_params is not None:
        return ghw_reed_muller(*c.rm_params)
    return ghw_exact(c, cap=cap)


def random_code(n: int, dim: int, rng: np.random.Generator, label: str = "") -> LinearCode:
    """A uniformly random (n, dim) code, for test corpora."""
    if not 0 < dim <= n:
        raise ValueError(f"need 0 < dim <= n, got ({n}, {dim})")
    while True:
        g = BitMatrix(rng.integers(0, 2, size=(dim, n), dtype=np.uint8))
        if bitlinalg.rank(g) == dim:
            return LinearCode(n=n, dim=dim, generator=g, label=label or f"random({n},{dim})")
