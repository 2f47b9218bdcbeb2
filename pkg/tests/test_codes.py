"""Tests for code construction, duals, and weight hierarchies."""

import numpy as np
import pytest

from wiretapkit import bitlinalg, codes
from wiretapkit.bitlinalg import BitMatrix
from wiretapkit.codes import GHWProfile, LinearCode

from conftest import oracle_codeword_set, oracle_ghw, oracle_rank


class TestLinearCode:
    def test_shape_validation(self):
        with pytest.raises(ValueError):
            LinearCode(n=4, dim=3, generator=BitMatrix.identity(2))

    def test_rank_validation(self):
        with pytest.raises(ValueError):
            LinearCode(n=2, dim=2, generator=BitMatrix.from_strings(["11", "11"]))

    def test_json_round_trip(self):
        c = codes.reed_muller(1, 3)
        back = LinearCode.from_json(c.to_json())
        assert back.n == c.n and back.dim == c.dim
        assert back.generator == c.generator and back.label == c.label


class TestReedMuller:
    def test_parameters(self):
        c = codes.reed_muller(1, 2)
        assert (c.n, c.dim) == (4, 3)

    def test_repetition(self):
        c = codes.reed_muller(0, 3)
        assert (c.n, c.dim) == (8, 1)
        assert c.generator.to_strings() == ["11111111"]

    def test_min_distance_rm13(self):
        words = codes.enumerate_codewords(codes.reed_muller(1, 3))
        nonzero = words[words.any(axis=1)]
        assert int(nonzero.sum(axis=1).min()) == 4

    def test_parameter_errors(self):
        with pytest.raises(ValueError):
            codes.reed_muller(3, 2)
        with pytest.raises(ValueError):
            codes.reed_muller(0, 0)

    def test_nesting(self):
        # RM(u, m) codewords all lie inside RM(u+1, m)
        for m in (2, 3, 4):
            for u in range(m):
                inner = oracle_codeword_set(codes.reed_muller(u, m).generator.a)
                outer = oracle_codeword_set(codes.reed_muller(u + 1, m).generator.a)
                assert inner <= outer


class TestDual:
    def test_example_code_dual_matches_published_check_matrix(self):
        g = BitMatrix.from_strings(["0111", "1110"])
        c = LinearCode(n=4, dim=2, generator=g, label="demo")
        d = codes.dual(c)
        assert oracle_codeword_set(d.generator.a) == oracle_codeword_set(
            BitMatrix.from_strings(["1101", "1011"]).a
        )

    def test_dual_rm12_is_repetition(self):
        d = codes.dual(codes.reed_muller(1, 2))
        assert oracle_codeword_set(d.generator.a) == {(0, 0, 0, 0), (1, 1, 1, 1)}
        assert d.rm_params == (0, 2) and d.label == "RM(0,2)"

    def test_dual_of_full_space(self):
        c = LinearCode(n=3, dim=3, generator=BitMatrix.identity(3))
        assert codes.dual(c).dim == 0

    def test_double_dual_and_orthogonality(self, small_corpus):
        for c in small_corpus:
            if c.n > 12:
                continue
            d = codes.dual(c)
            assert c.dim + d.dim == c.n
            if d.dim:
                prod = (c.generator.a.astype(int) @ d.generator.a.T.astype(int)) % 2
                assert not prod.any()
                dd = codes.dual(d)
                assert oracle_codeword_set(dd.generator.a) == oracle_codeword_set(c.generator.a)


class TestEnumerate:
    def test_example_code_words_in_order(self):
        g = BitMatrix.from_strings(["0111", "1110"])
        c = LinearCode(n=4, dim=2, generator=g)
        got = ["".join(map(str, w)) for w in codes.enumerate_codewords(c)]
        assert got == ["0000", "1110", "0111", "1001"]

    def test_rm02(self):
        words = codes.enumerate_codewords(codes.reed_muller(0, 2))
        assert {tuple(w) for w in words} == {(0, 0, 0, 0), (1, 1, 1, 1)}

    def test_cap_refusal(self):
        c = codes.reed_muller(4, 5)
        with pytest.raises(ValueError):
            codes.enumerate_codewords(c, cap=10)

    def test_matches_oracle(self, small_corpus):
        for c in small_corpus[:10]:
            got = {tuple(int(b) for b in w) for w in codes.enumerate_codewords(c)}
            assert got == oracle_codeword_set(c.generator.a)


class TestGHW:
    def test_profile_must_increase(self):
        with pytest.raises(ValueError):
            GHWProfile(weights=(2, 2, 3))

    def test_leakage_at(self):
        p = GHWProfile(weights=(2, 4))
        assert [p.leakage_at(mu) for mu in range(5)] == [0, 0, 1, 1, 2]

    def test_exact_known_values(self):
        g = BitMatrix.from_strings(["1101", "1011"])
        c = LinearCode(n=4, dim=2, generator=g)
        assert codes.ghw_exact(c).weights == (2, 4)
        rep = codes.reed_muller(0, 2)
        assert codes.ghw_exact(rep).weights == (4,)
        full = LinearCode(n=2, dim=2, generator=BitMatrix.identity(2))
        assert codes.ghw_exact(full).weights == (1, 2)

    def test_exact_cap(self):
        c = codes.random_code(22, 3, np.random.default_rng(0))
        with pytest.raises(ValueError):
            codes.ghw_exact(c, cap=20)

    def test_exact_matches_subcode_oracle(self, small_corpus):
        checked = 0
        for c in small_corpus:
            if c.dim > 4 or c.n > 10:
                continue
            assert codes.ghw_exact(c).weights == oracle_ghw(c.generator.a), c.label
            checked += 1
        assert checked >= 8

    def test_first_weight_is_min_distance(self, small_corpus):
        for c in small_corpus:
            if c.dim > 12:
                continue
            words = codes.enumerate_codewords(c)
            nonzero = words[words.any(axis=1)]
            assert codes.ghw_exact(c, cap=16).weights[0] == int(nonzero.sum(axis=1).min())


class TestGHWReedMuller:
    def test_known_profiles(self):
        assert codes.ghw_reed_muller(1, 2).weights == (2, 3, 4)
        assert codes.ghw_reed_muller(0, 4).weights == (16,)
        assert codes.ghw_reed_muller(3, 3).weights == tuple(range(1, 9))

    def test_monomial_equals_exact_at_desk_scale(self):
        for m in range(1, 5):
            for u in range(0, m + 1):
                mono = codes.ghw_reed_muller(u, m, method="monomial")
                exact = codes.ghw_reed_muller(u, m, method="exact")
                assert mono.weights == exact.weights, (u, m)

    def test_auto_source_switch(self):
        assert codes.ghw_reed_muller(1, 4).source == "exact"
        assert codes.ghw_reed_muller(1, 5).source == "monomial"

    def test_first_order_length32_hierarchy(self):
        # classical hierarchy of the (32, 6) first-order code
        assert codes.ghw_reed_muller(1, 5).weights == (16, 24, 28, 30, 31, 32)

    def test_bad_method(self):
        with pytest.raises(ValueError):
            codes.ghw_reed_muller(1, 3, method="guess")


class TestRandomCode:
    def test_full_rank_and_shape(self):
        rng = np.random.default_rng(9)
        c = codes.random_code(8, 3, rng)
        assert (c.n, c.dim) == (8, 3)
        assert bitlinalg.rank(c.generator) == 3
        assert oracle_rank(c.generator.a) == 3

    def test_bad_params(self):
        with pytest.raises(ValueError):
            codes.random_code(4, 0, np.random.default_rng(0))
        with pytest.raises(ValueError):
            codes.random_code(4, 5, np.random.default_rng(0))
