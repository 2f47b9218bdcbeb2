"""Unit and property tests for GF(2) linear algebra."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wiretapkit import bitlinalg
from wiretapkit.bitlinalg import BitMatrix

from conftest import oracle_rank

bit_matrices = st.integers(1, 8).flatmap(
    lambda r: st.integers(1, 10).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(0, 1), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


class TestBitMatrix:
    def test_from_strings_bit_convention(self):
        m = BitMatrix.from_strings(["1011"])
        assert list(m.row(0)) == [1, 0, 1, 1]

    def test_round_trip_strings(self):
        rows = ["0111", "1110"]
        assert BitMatrix.from_strings(rows).to_strings() == rows

    def test_identity_and_zeros(self):
        assert bitlinalg.rank(BitMatrix.identity(4)) == 4
        assert bitlinalg.rank(BitMatrix.zeros(3, 5)) == 0

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            BitMatrix([[0, 2]])

    def test_rejects_3d(self):
        with pytest.raises(ValueError):
            BitMatrix(np.zeros((2, 2, 2), dtype=np.uint8))

    def test_immutable(self):
        m = BitMatrix([[1, 0]])
        with pytest.raises(ValueError):
            m.a[0, 0] = 0

    def test_eq_and_hash(self):
        a = BitMatrix.from_strings(["10", "01"])
        b = BitMatrix.identity(2)
        assert a == b and hash(a) == hash(b)
        assert a != BitMatrix.from_strings(["01", "10"])


class TestRank:
    def test_example_generator(self):
        assert bitlinalg.rank(BitMatrix.from_strings(["0111", "1110"])) == 2

    def test_dependent_rows(self):
        assert bitlinalg.rank(BitMatrix.from_strings(["101", "011", "110"])) == 2

    @given(bit_matrices)
    @settings(max_examples=150, deadline=None)
    def test_matches_rowspace_oracle(self, rows):
        m = BitMatrix(rows)
        assert bitlinalg.rank(m) == oracle_rank(m.a)

    @given(bit_matrices)
    @settings(max_examples=100, deadline=None)
    def test_bounded_by_dimensions(self, rows):
        m = BitMatrix(rows)
        assert bitlinalg.rank(m) <= min(m.rows, m.cols)


class TestMul:
    def test_against_numpy_mod2(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            a = rng.integers(0, 2, size=(4, 6), dtype=np.uint8)
            b = rng.integers(0, 2, size=(6, 3), dtype=np.uint8)
            got = bitlinalg.mul(BitMatrix(a), BitMatrix(b)).a
            assert np.array_equal(got, (a.astype(int) @ b.astype(int)) % 2)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            bitlinalg.mul(BitMatrix.identity(2), BitMatrix.identity(3))

    def test_mulvec(self):
        g = BitMatrix.from_strings(["0111", "1110"])
        assert list(bitlinalg.mulvec([1, 1], g)) == [1, 0, 0, 1]
        with pytest.raises(ValueError):
            bitlinalg.mulvec([1, 1, 1], g)


class TestColumnSelect:
    def test_order_preserved(self):
        m = BitMatrix.from_strings(["0111", "1110"])
        assert bitlinalg.column_select(m, [2, 0]).to_strings() == ["10", "11"]

    def test_empty_selection(self):
        assert bitlinalg.column_select(BitMatrix.identity(3), []).cols == 0

    def test_duplicate_rejected(self):
        with pytest.raises(ValueError):
            bitlinalg.column_select(BitMatrix.identity(3), [1, 1])

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            bitlinalg.column_select(BitMatrix.identity(3), [3])


class TestCompleteBasis:
    @given(bit_matrices)
    @settings(max_examples=100, deadline=None)
    def test_extends_to_full_space(self, rows):
        m = BitMatrix(rows)
        r = bitlinalg.rank(m)
        if r != m.rows or r >= m.cols:
            return
        ext = bitlinalg.complete_basis(m)
        assert ext.rows == m.cols - r
        assert bitlinalg.rank(bitlinalg.stack(ext, m)) == m.cols

    def test_rejects_dependent_rows(self):
        with pytest.raises(ValueError):
            bitlinalg.complete_basis(BitMatrix.from_strings(["11", "11"]))

    def test_rejects_already_full(self):
        with pytest.raises(ValueError):
            bitlinalg.complete_basis(BitMatrix.identity(3))


class TestRrefNullSpace:
    @given(bit_matrices)
    @settings(max_examples=150, deadline=None)
    def test_rref_preserves_rank_and_pivots(self, rows):
        m = BitMatrix(rows)
        red, pivots = bitlinalg.rref(m)
        assert len(pivots) == bitlinalg.rank(m)
        for i, p in enumerate(pivots):
            col = red.a[:, p]
            assert col[i] == 1 and col.sum() == 1

    @given(bit_matrices)
    @settings(max_examples=150, deadline=None)
    def test_null_space_orthogonal_and_complete(self, rows):
        m = BitMatrix(rows)
        ns = bitlinalg.null_space(m)
        assert ns.rows == m.cols - bitlinalg.rank(m)
        if ns.rows:
            prod = (m.a.astype(int) @ ns.a.T.astype(int)) % 2
            assert not prod.any()
            assert bitlinalg.rank(ns) == ns.rows

    def test_full_rank_square_has_trivial_null_space(self):
        assert bitlinalg.null_space(BitMatrix.identity(4)).rows == 0
