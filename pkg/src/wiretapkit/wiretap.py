"""Coset wiretap encoder/decoder and exact equivocation analysis.

A k-bit message selects a coset of an (n, n-k) linear code C; the
auxiliary (n-k)-bit word picks the coset element uniformly.  Decoding is
a syndrome computation.  Leakage to an erasure-channel eavesdropper is
always an integer number of bits and is catalogued per erasure pattern
in the equivocation matrix, with the worst case per pattern weight given
by the generalized Hamming weights of the dual code.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from math import comb

import numpy as np

from . import bitlinalg, codes, kernels
from .bitlinalg import BitMatrix
from .codes import GHWProfile, LinearCode

DEFAULT_PATTERN_CAP = 24
DEFAULT_ORACLE_CAP = 16
DEFAULT_TABLE_CAP = 20


@dataclass(frozen=True)
class ErasurePattern:
    """The positions an eavesdropper receives (everything else erased)."""

    revealed: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.revealed)) != len(self.revealed):
            raise ValueError(f"duplicate positions in {self.revealed}")

    @property
    def mu(self) -> int:
        return len(self.revealed)


@dataclass(frozen=True)
class EquivocationMatrix:
    """counts[e, mu] = number of mu-position erasure patterns that leave
    exactly e bits of message equivocation."""

    n: int
    k: int
    counts: np.ndarray

    def column_sums_ok(self) -> bool:
        return all(int(self.counts[:, mu].sum()) == comb(self.n, mu) for mu in range(self.n + 1))

    def worst_case_leakage(self, mu: int) -> int:
        """Max leakage over the tallied patterns with mu revealed bits."""
        nz = np.nonzero(self.counts[:, mu])[0]
        return self.k - int(nz[0])

    def to_csv(self) -> str:
        """Rows are equivocation levels descending, columns mu ascending."""
        buf = io.StringIO()
        buf.write("equivocation_bits," + ",".join(f"mu={m}" for m in range(self.n + 1)) + "\n")
        for e in range(self.k, -1, -1):
            buf.write(str(e) + "," + ",".join(str(int(c)) for c in self.counts[e]) + "\n")
        return buf.getvalue()


def _dot(a: np.ndarray, b: np.ndarray) -> int:
    return int(np.bitwise_and(a, b).sum() & 1)


def _orthonormal_dual_basis(d: BitMatrix) -> BitMatrix | None:
    """A basis H of d's row space with H.H^T = I, if one exists.

    Gram-Schmidt over GF(2): repeatedly peel off a vector of odd
    self-overlap and project it out of the rest.  Fails (returns None)
    exactly when the form is alternating on the row space, i.e. every
    vector in it has even weight.  Rows of the result are sorted by
    decreasing binary value for determinism.
    """
    work = [r.copy() for r in d.a]
    out: list[np.ndarray] = []
    while work:
        pick = next((i for i, r in enumerate(work) if _dot(r, r)), None)
        if pick is None:
            return None
        u = work.pop(pick)
        out.append(u)
        work = [r ^ u if _dot(r, u) else r for r in work]
    out.sort(key=lambda r: -int("".join(str(int(b)) for b in r), 2))
    return BitMatrix(np.array(out, dtype=np.uint8))


class WiretapCode:
    """Coset wiretap code built on a base code C of dimension n - k.

    ``gprime`` carries the message part of the encoder; ``h`` is the
    parity-check matrix of C used for syndrome decoding.  When the
    syndrome directly equals the message (``direct_syndrome``) no lookup
    is needed; otherwise a dense syndrome-to-message table is stored.
    """

    def __init__(
        self,
        base_code: LinearCode,
        gprime: BitMatrix,
        h: BitMatrix,
        syndrome_table: np.ndarray | None = None,
        label: str | None = None,
    ):
        n = base_code.n
        k = n - base_code.dim
        if gprime.rows != k or gprime.cols != n:
            raise ValueError(f"gprime must be {k}x{n}, got {gprime.rows}x{gprime.cols}")
        if h.rows != k or h.cols != n:
            raise ValueError(f"h must be {k}x{n}, got {h.rows}x{h.cols}")
        if np.any(bitlinalg.mul(base_code.generator, BitMatrix(h.a.T)).a):
            raise ValueError("h is not a parity check of the base code")
        if bitlinalg.rank(bitlinalg.stack(gprime, base_code.generator)) != n:
            raise ValueError("gprime stacked over the base generator must have rank n")
        self.base_code = base_code
        self.gprime = gprime
        self.h = h
        self.n = n
        self.k = k
        self._syndrome_table = syndrome_table
        self._label = label
        self._dual_ghw: GHWProfile | None = None

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def direct_syndrome(self) -> bool:
        return self._syndrome_table is None

    @property
    def label(self) -> str:
        return self._label or self.base_code.label

    def dual_ghw(self) -> GHWProfile:
        """Weight hierarchy of the dual of the base code (cached)."""
        if self._dual_ghw is None:
            self._dual_ghw = codes.ghw_of(codes.dual(self.base_code))
        return self._dual_ghw


def build(c: LinearCode, table_cap: int = DEFAULT_TABLE_CAP, label: str | None = None) -> WiretapCode:
    """Construct the wiretap code with base code C = c.

    Prefers a parity-check basis H with H.H^T = I so that the decoded
    syndrome equals the message outright and G' = H; when no such basis
    exists, G' comes from a standard-basis completion and a dense
    syndrome lookup table of size 2^k is built.
    """
    if not 0 < c.dim < c.n:
        raise ValueError(f"base code must satisfy 0 < dim < n, got dim={c.dim}, n={c.n}")
    k = c.n - c.dim
    d = codes.dual(c)
    ortho = _orthonormal_dual_basis(d.generator)
    if ortho is not None:
        # Syndrome identity check: s = m.H.H^T = m for every message.
        if bitlinalg.mul(ortho, BitMatrix(ortho.a.T)) == BitMatrix.identity(k):
            if bitlinalg.rank(bitlinalg.stack(ortho, c.generator)) == c.n:
                return WiretapCode(c, gprime=ortho, h=ortho, label=label)
    if k > table_cap:
        raise ValueError(
            f"no direct-syndrome basis and k={k} exceeds the {table_cap}-bit lookup-table cap"
        )
    gprime = bitlinalg.complete_basis(c.generator)
    h = d.generator
    table = np.zeros(2**k, dtype=np.int64)
    smat = bitlinalg.mul(gprime, BitMatrix(h.a.T)).a.astype(np.uint64)  # k x k
    for mi in range(2**k):
        mbits = _int_to_bits(mi, k)
        s = (mbits.astype(np.uint64) @ smat) & 1
        table[_bits_to_int(s)] = mi
    return WiretapCode(c, gprime=gprime, h=h, syndrome_table=table, label=label)


def _int_to_bits(value: int, width: int) -> np.ndarray:
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def _bits_to_int(bits) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


def encode(w: WiretapCode, m, mprime) -> np.ndarray:
    """x = m.G' xor m'.G: the coset of C selected by m, element by m'."""
    m = np.asarray(m, dtype=np.uint8)
    mprime = np.asarray(mprime, dtype=np.uint8)
    if m.shape != (w.k,):
        raise ValueError(f"message must have {w.k} bits, got shape {m.shape}")
    if mprime.shape != (w.n - w.k,):
        raise ValueError(f"auxiliary word must have {w.n - w.k} bits, got shape {mprime.shape}")
    return bitlinalg.mulvec(m, w.gprime) ^ bitlinalg.mulvec(mprime, w.base_code.generator)


def decode(w: WiretapCode, y) -> np.ndarray:
    """Recover the message from an error-free received word via its syndrome."""
    y = np.asarray(y, dtype=np.uint8)
    if y.shape != (w.n,):
        raise ValueError(f"received word must have {w.n} bits, got shape {y.shape}")
    s = ((y.astype(np.uint64) @ w.h.a.T.astype(np.uint64)) & 1).astype(np.uint8)
    if w.direct_syndrome:
        return s
    return _int_to_bits(int(w._syndrome_table[_bits_to_int(s)]), w.k)


def leakage(w: WiretapCode, p: ErasurePattern) -> int:
    """Bits of message information the pattern reveals: mu - rank(G_R)."""
    for i in p.revealed:
        if not 0 <= i < w.n:
            raise ValueError(f"revealed position {i} out of range for n={w.n}")
    g_r = bitlinalg.column_select(w.base_code.generator, p.revealed)
    return p.mu - bitlinalg.rank(g_r)


def posterior_oracle(
    w: WiretapCode, z, cap: int = DEFAULT_ORACLE_CAP
) -> dict[str, float]:
    """Brute-force message posterior given an erased observation.

    z is a string over {0, 1, ?} (or a sequence using None for
    erasures).  Assuming uniform (m, m'), each message's probability is
    proportional to how many of its coset's words match z on the
    revealed positions.  The entropy of the result is exactly
    k - leakage(pattern of z).
    """
    if w.n > cap:
        raise ValueError(f"blocklength {w.n} exceeds oracle cap {cap}")
    revealed, values = _parse_observation(z, w.n)
    msgs = codes.enumerate_codewords(
        LinearCode(n=w.n, dim=w.k, generator=w.gprime, label="gprime"), cap=w.k
    )
    cosets = codes.enumerate_codewords(w.base_code, cap=w.base_code.dim)
    counts: dict[str, int] = {}
    total = 0
    for mi in range(msgs.shape[0]):
        words = msgs[mi][None, :] ^ cosets
        if revealed:
            hits = int(np.all(words[:, revealed] == values[None, :], axis=1).sum())
        else:
            hits = words.shape[0]
        if hits:
            key = "".join(str(int(b)) for b in _int_to_bits(mi, w.k))
            counts[key] = hits
            total += hits
    if total == 0:
        raise ValueError("observation is inconsistent with every codeword")
    return {key: hits / total for key, hits in counts.items()}


def posterior_entropy(dist: dict[str, float]) -> float:
    """Shannon entropy in bits of a posterior returned by the oracle."""
    probs = np.array([p for p in dist.values() if p > 0])
    return float(-(probs * np.log2(probs)).sum())


def _parse_observation(z, n: int) -> tuple[list[int], np.ndarray]:
    if isinstance(z, str):
        symbols = [None if ch == "?" else int(ch) for ch in z]
    else:
        symbols = [None if v is None else int(v) for v in z]
    if len(symbols) != n:
        raise ValueError(f"observation must have {n} symbols, got {len(symbols)}")
    revealed = [i for i, v in enumerate(symbols) if v is not None]
    values = np.array([symbols[i] for i in revealed], dtype=np.uint8)
    return revealed, values


def equivocation_matrix(w: WiretapCode, cap: int = DEFAULT_PATTERN_CAP) -> EquivocationMatrix:
    """Tally leakage over every erasure pattern of every weight.

    counts[k - leakage, mu] accumulates one entry per mu-subset of
    positions; column mu sums to C(n, mu).
    """
    if w.n > cap:
        raise ValueError(
            f"blocklength {w.n} exceeds pattern cap {cap} "
            f"(~{comb(w.n, w.n // 2)} patterns at the worst weight)"
        )
    g = w.base_code.generator
    tallies = kernels.subset_rank_tallies(bitlinalg.column_masks(g), g.rows)
    counts = np.zeros((w.k + 1, w.n + 1), dtype=np.int64)
    for mu in range(w.n + 1):
        for r in np.nonzero(tallies[mu])[0]:
            leak = mu - int(r)
            counts[w.k - leak, mu] += int(tallies[mu, r])
    return EquivocationMatrix(n=w.n, k=w.k, counts=counts)


def worst_case_leakage(w: WiretapCode, mu: int) -> int:
    """Max bits leaked over all patterns with mu revealed positions.

    Equals the number of generalized Hamming weights of the dual of the
    base code that are <= mu, so it stays cheap for codes whose dual
    hierarchy is known in closed form.
    """
    if not 0 <= mu <= w.n:
        raise ValueError(f"mu must lie in [0, {w.n}], got {mu}")
    return w.dual_ghw().leakage_at(mu)


def example_code() -> WiretapCode:
    """The built-in rate-1/2, n=4 demonstration code.

    Base code generated by [0111; 1110]; the construction lands on the
    parity-check rows [1101; 1011], under which the decoded syndrome is
    the message itself.
    """
    g = BitMatrix.from_strings(["0111", "1110"])
    c = LinearCode(n=4, dim=2, generator=g, label="demo(4,2)")
    return build(c)
