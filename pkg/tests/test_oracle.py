"""Tests for the brute-force oracles over tiny finite fields."""

from fractions import Fraction

import pytest

from greenfn.cyclo import CycQ
from greenfn.oracle import (
    FiniteGL,
    OracleError,
    gl1_characters,
    gl2_characters,
    green_polynomial,
    jordan_matrix,
    jordan_type,
)
from greenfn.qpoly import QPoly

q = QPoly.q()


class TestGroups:
    @pytest.mark.parametrize(
        "n,p,order",
        [(2, 2, 6), (2, 3, 48), (3, 2, 168), (1, 3, 2)],
    )
    def test_orders(self, n, p, order):
        # [DERIVED] |GL_n(F_q)| = prod (q^n - q^k)
        assert FiniteGL(n, p).order == order

    def test_jordan_round_trip(self):
        for p in (2, 3):
            for lam in [(3,), (2, 1), (1, 1, 1)]:
                assert jordan_type(jordan_matrix(lam, 3, p), p) == lam

    def test_unipotent_class_sizes(self):
        # [DERIVED] GL3(F2): 1 + 21 + 42 = 2^6 unipotent elements
        sizes = FiniteGL(3, 2).unipotent_class_sizes()
        assert sizes == {(3,): 42, (2, 1): 21, (1, 1, 1): 1}
        sizes2 = FiniteGL(2, 3).unipotent_class_sizes()
        assert sizes2 == {(2,): 8, (1, 1): 1}


class TestCharacters:
    @pytest.mark.parametrize("p", [2, 3])
    def test_gl2_orthonormal(self, p):
        G = FiniteGL(2, p)
        chars = gl2_characters(p)
        assert len(chars) == {2: 3, 3: 8}[p]
        values = [[ch(g) for g in G.elements] for ch in chars]
        for i, a in enumerate(values):
            for j, b in enumerate(values):
                s = CycQ(0)
                for x, y in zip(a, b):
                    s = s + x * y.conjugate()
                assert s * CycQ(Fraction(1, G.order)) == CycQ(1 if i == j else 0)

    def test_gl2_degrees(self):
        # [DERIVED] degrees 1, 1, q-1 (x3), q (x2), q+1 for GL2(F3)
        ident = ((1, 0), (0, 1))
        degrees = sorted(
            next(k for k in range(1, 5) if ch(ident) == CycQ(k))
            for ch in gl2_characters(3)
        )
        assert degrees == [1, 1, 2, 2, 2, 3, 3, 4]

    def test_gl1_characters(self):
        chars = gl1_characters(3)
        assert len(chars) == 2
        assert chars[1](((2,),)) == CycQ(-1)


class TestCountedTwoVar:
    def test_reference_values(self):
        # [PAPER] GL2(F2), L = T, u = v = 1: the flag count 3
        assert FiniteGL(2, 2).hc_two_var((1, 1), (1, 1), ((1,), (1,))) == 3
        # [PAPER] GL3(F2), L = GL2 x GL1, u regular, v = ((2), (1)): 1/3
        assert FiniteGL(3, 2).hc_two_var((2, 1), (3,), ((2,), (1,))) == Fraction(1, 3)

    @pytest.mark.parametrize(
        "n,p,comp",
        [
            (2, 2, (1, 1)),
            (2, 3, (1, 1)),
            (3, 2, (1, 1, 1)),
            (3, 2, (2, 1)),
            (3, 2, (1, 2)),
        ],
    )
    def test_certified_against_harish_chandra(self, n, p, comp):
        assert FiniteGL(n, p).certify_hc(comp)

    def test_certification_needs_small_blocks(self):
        with pytest.raises(OracleError):
            FiniteGL(3, 2).certify_hc((3,))


class TestGelfandGraevOracle:
    @pytest.mark.parametrize("n,p,expect", [(2, 2, 2), (2, 3, 6), (3, 2, 4)])
    def test_norms(self, n, p, expect):
        # [DERIVED] <Gamma, Gamma> = q^{rk_ss} (q - 1) for GL_n
        assert FiniteGL(n, p).gg_inner_product() == CycQ(expect)


class TestGreenPolynomials:
    def test_reference_values(self):
        # [DERIVED] classical Green polynomials for n = 2, 3
        assert green_polynomial((1, 1), (1, 1)) == q + 1
        assert green_polynomial((1, 1), (2,)) == 1 - q
        assert green_polynomial((2,), (2,)) == QPoly([1])
        assert green_polynomial((1, 1, 1), (1, 1, 1)) == QPoly.phi(2) * QPoly.phi(3)
        assert green_polynomial((2, 1), (1, 1, 1)) == 2 * q + 1
        assert green_polynomial((2, 1), (3,)) == 1 - q

    def test_regular_column_is_trivial_character(self):
        # [DERIVED] Q^{(n)}_mu = 1 for every cycle type mu
        for mu in [(3,), (2, 1), (1, 1, 1)]:
            assert green_polynomial((3,), mu) == QPoly([1])

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            green_polynomial((2,), (1, 1, 1))
