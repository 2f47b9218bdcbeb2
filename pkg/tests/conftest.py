"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the package's own linear-algebra
paths: rank is measured by enumerating the row space, weight
hierarchies by exhaustive subcode-support search over codeword tuples.
Library results are checked against these, never against themselves.
"""

import itertools
import math

import numpy as np
import pytest

from wiretapkit import codes


def oracle_rank(rows) -> int:
    """GF(2) rank by counting the row space (independent of the kernels)."""
    masks = [int("".join(str(int(b)) for b in r), 2) if not isinstance(r, int) else r for r in rows]
    space = {0}
    for m in masks:
        space |= {v ^ m for v in space}
    return int(math.log2(len(space)))


def oracle_leakage(generator: np.ndarray, revealed) -> int:
    """mu - rank of the revealed columns, using the row-space rank oracle."""
    sub = generator[:, list(revealed)]
    if sub.shape[1] == 0:
        return 0
    return len(revealed) - oracle_rank(sub)


def oracle_codeword_set(generator: np.ndarray) -> set[tuple[int, ...]]:
    """All XOR combinations of the rows, as a set of bit tuples."""
    dim, n = generator.shape
    out = set()
    for picks in itertools.product([0, 1], repeat=dim):
        w = np.zeros(n, dtype=np.uint8)
        for p, row in zip(picks, generator):
            if p:
                w ^= row
        out.add(tuple(int(b) for b in w))
    return out


def oracle_ghw(generator: np.ndarray) -> tuple[int, ...]:
    """Weight hierarchy by brute force over r-tuples of codewords.

    d_r = min support size over all r-dimensional subcodes; a subcode is
    identified by any r independent codewords spanning it.  Exponential
    in dim, so only run on corpus codes with dim <= 4.
    """
    dim, n = generator.shape
    words = [np.array(w, dtype=np.uint8) for w in oracle_codeword_set(generator) if any(w)]
    weights = []
    for r in range(1, dim + 1):
        best = n + 1
        for combo in itertools.combinations(words, r):
            if oracle_rank(np.array(combo)) != r:
                continue
            support = np.zeros(n, dtype=np.uint8)
            for w in combo:
                support |= w
            best = min(best, int(support.sum()))
        weights.append(best)
    return tuple(weights)


def random_corpus(max_n: int, count: int, seed: int = 71) -> list[codes.LinearCode]:
    """Deterministic corpus of random full-rank codes with 4 <= n <= max_n."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(4, max_n + 1))
        dim = int(rng.integers(1, n))
        out.append(codes.random_code(n, dim, rng, label=f"corpus{len(out)}({n},{dim})"))
    return out


def rm_family_codes(max_m: int) -> list[codes.LinearCode]:
    """All proper RM(u, m) codes with m <= max_m, both as given and dualized."""
    fam = []
    for m in range(1, max_m + 1):
        for u in range(0, m + 1):
            rm = codes.reed_muller(u, m)
            for c in (rm, codes.dual(rm)):
                if 0 < c.dim < c.n:
                    fam.append(c)
    return fam


@pytest.fixture(scope="session")
def small_corpus():
    """>= 20 random codes with n <= 10 plus the small RM family."""
    return random_corpus(max_n=10, count=22) + rm_family_codes(max_m=3)


@pytest.fixture(scope="session")
def medium_corpus(small_corpus):
    """Codes up to n = 16: the small corpus plus larger random and RM codes."""
    extra = random_corpus(max_n=16, count=10, seed=72)
    extra = [c for c in extra if c.n > 10]
    rm4 = [c for c in rm_family_codes(max_m=4) if c.n == 16]
    return small_corpus + extra + rm4
