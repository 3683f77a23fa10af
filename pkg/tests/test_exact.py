"""Tests for the exact coefficient rings: CycQ, QPoly, RatFunc, Phi display."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greenfn.cyclo import CycQ, cyclotomic_int_coeffs, totient
from greenfn.linalg import determinant, identity, mat_inverse, mat_mul, solve_linear
from greenfn.qpoly import (
    FactorizationRefused,
    QPoly,
    RatFunc,
    parse_phi_string,
    phi_factorize,
    render_phi,
    render_poly,
)

# ---------------------------------------------------------------------------
# strategies

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=6
)

conductors = st.sampled_from([1, 3, 4, 5, 7, 8, 9, 12])


@st.composite
def cycq_elems(draw):
    n = draw(conductors)
    deg = totient(n)
    coeffs = draw(st.lists(rationals, min_size=1, max_size=deg))
    out = CycQ(0)
    for k, c in enumerate(coeffs):
        out = out + CycQ(c) * CycQ.zeta(n) ** k
    return out


@st.composite
def qpolys(draw, max_degree=4):
    coeffs = draw(st.lists(rationals, min_size=0, max_size=max_degree + 1))
    return QPoly([CycQ(c) for c in coeffs])


@st.composite
def qpolys_cyc(draw, max_degree=3):
    coeffs = draw(st.lists(cycq_elems(), min_size=0, max_size=max_degree + 1))
    return QPoly(coeffs)


# ---------------------------------------------------------------------------
# CycQ


class TestCycQ:
    def test_basic_identities(self):
        # [TRIVIAL] defining relations of small roots of unity
        z3 = CycQ.zeta(3)
        assert z3**3 == CycQ(1)
        assert z3**2 + z3 + 1 == CycQ(0)
        z4 = CycQ.zeta(4)
        assert z4 * z4 == CycQ(-1)

    def test_conductor_minimization(self):
        # [TRIVIAL] zeta_12^4 is a primitive cube root of unity
        assert CycQ.zeta(12, 4) == CycQ.zeta(3)
        assert CycQ.zeta(12, 4).n == 3
        # zeta_6 = 1 + zeta_3, and the minimal conductor is never 2 mod 4
        z6 = CycQ.zeta(6)
        assert z6.n == 3
        assert z6 == CycQ(1) + CycQ.zeta(3)
        assert (CycQ.zeta(8) ** 2).n == 4

    def test_golden_ratio_relation(self):
        # [DERIVED] x = zeta_5 + zeta_5^{-1} satisfies x^2 + x - 1 = 0
        x = CycQ.zeta(5) + CycQ.zeta(5, 4)
        assert x * x + x - CycQ(1) == CycQ(0)

    @given(cycq_elems(), cycq_elems(), cycq_elems())
    @settings(max_examples=60, deadline=None)
    def test_ring_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + CycQ(0) == a
        assert a * CycQ(1) == a

    @given(cycq_elems())
    @settings(max_examples=60, deadline=None)
    def test_inverse_and_conjugation(self, a):
        if not a.is_zero():
            assert a * a.inverse() == CycQ(1)
        assert a.conjugate().conjugate() == a
        norm = a * a.conjugate()
        # a * conj(a) is fixed by conjugation (real)
        assert norm.conjugate() == norm

    @given(cycq_elems(), cycq_elems())
    @settings(max_examples=40, deadline=None)
    def test_conjugation_is_ring_hom(self, a, b):
        assert (a + b).conjugate() == a.conjugate() + b.conjugate()
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()

    @given(cycq_elems())
    @settings(max_examples=60, deadline=None)
    def test_json_round_trip(self, a):
        assert CycQ.from_json(a.to_json()) == a

    def test_cyclotomic_polynomials(self):
        # [TRIVIAL] standard tables
        assert cyclotomic_int_coeffs(1) == (-1, 1)
        assert cyclotomic_int_coeffs(6) == (1, -1, 1)
        assert cyclotomic_int_coeffs(12) == (1, 0, -1, 0, 1)


# ---------------------------------------------------------------------------
# QPoly


class TestQPoly:
    @given(qpolys(), qpolys(), qpolys())
    @settings(max_examples=60, deadline=None)
    def test_ring_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(qpolys(), qpolys())
    @settings(max_examples=60, deadline=None)
    def test_divmod(self, a, b):
        if b.is_zero():
            with pytest.raises(ZeroDivisionError):
                divmod(a, b)
            return
        quo, rem = divmod(a, b)
        assert quo * b + rem == a
        assert rem.is_zero() or rem.degree() < b.degree()

    @given(qpolys(), qpolys())
    @settings(max_examples=40, deadline=None)
    def test_gcd(self, a, b):
        g = a.gcd(b)
        if g.is_zero():
            assert a.is_zero() and b.is_zero()
        else:
            assert g.divides(a) and g.divides(b)
            assert g.leading() == CycQ(1)

    @given(qpolys_cyc())
    @settings(max_examples=40, deadline=None)
    def test_conjugate_involution(self, a):
        assert a.conjugate().conjugate() == a

    @given(qpolys(), st.integers(min_value=-3, max_value=3))
    @settings(max_examples=40, deadline=None)
    def test_evaluation_hom(self, a, v):
        b = QPoly.q() + 1
        assert (a * b).evaluate(v) == a.evaluate(v) * b.evaluate(v)


# ---------------------------------------------------------------------------
# RatFunc


class TestRatFunc:
    @given(qpolys(), qpolys(max_degree=2), qpolys(), qpolys(max_degree=2))
    @settings(max_examples=40, deadline=None)
    def test_field_laws(self, n1, d1, n2, d2):
        if d1.is_zero() or d2.is_zero():
            return
        a, b = RatFunc(n1, d1), RatFunc(n2, d2)
        assert a + b == b + a
        assert a * b == b * a
        assert a - a == RatFunc(0)
        if not b.is_zero():
            assert (a / b) * b == a

    def test_normalization(self):
        q = QPoly.q()
        r = RatFunc(2 * (q * q - 1), 2 * (q - 1))
        assert r.is_polynomial()
        assert r.as_qpoly() == q + 1
        # denominator is monic
        s = RatFunc(1, 2 * q - 2)
        assert s.den == q - 1
        assert s.num == QPoly([Fraction(1, 2)])

    def test_q_power(self):
        assert RatFunc.q_power(-2) * RatFunc.q_power(2) == RatFunc(1)
        assert RatFunc.q_power(3) == RatFunc(QPoly.q(3))

    @given(qpolys(max_degree=3))
    @settings(max_examples=40, deadline=None)
    def test_inverse(self, p):
        if p.is_zero():
            return
        r = RatFunc(p)
        assert r * r.inverse() == RatFunc(1)


# ---------------------------------------------------------------------------
# Phi factorization and the rendering grammar


class TestPhiDisplay:
    @given(qpolys(max_degree=5))
    @settings(max_examples=60, deadline=None)
    def test_factorize_reassemble(self, p):
        fact = phi_factorize(p)
        assert fact.reassemble() == p

    @given(qpolys(max_degree=5))
    @settings(max_examples=60, deadline=None)
    def test_render_parse_round_trip(self, p):
        assert parse_phi_string(render_poly(p)) == p

    def test_reference_renderings(self):
        q = QPoly.q()
        # [TRIVIAL] hand-checked canonical strings
        assert render_poly((q * q - 1) * q) == "qPhi1Phi2"
        assert render_poly(QPoly([1, 4]) * QPoly.q(4) * QPoly.phi(2) ** 2 * QPoly([Fraction(1, 3)])) == "(4q+1)q^4Phi2^2/3"
        assert render_poly(QPoly([1, 1])) == "Phi2"
        assert render_poly(QPoly()) == "0"
        assert render_poly(QPoly([Fraction(-2, 3)])) == "-2/3"

    def test_parser_accepts_bare_sums(self):
        assert parse_phi_string("4q+1") == QPoly([1, 4])
        assert parse_phi_string("q^2-2q+1") == QPoly([1, -2, 1])
        assert parse_phi_string("-Phi3/2") == QPoly([Fraction(-1, 2)]) * QPoly.phi(3)
        assert parse_phi_string("Phi1^2Phi2+1") == QPoly.phi(1) ** 2 * QPoly.phi(2) + 1

    def test_refuses_irrational_coefficients(self):
        p = QPoly([CycQ.zeta(3), CycQ(1)])
        with pytest.raises(FactorizationRefused):
            phi_factorize(p)
        # render_poly falls back to the raw polynomial string
        assert "z3" in render_poly(p)

    def test_high_order_phi(self):
        q = QPoly.q()
        p = QPoly.phi(18) * QPoly.phi(12)
        fact = phi_factorize(p)
        assert fact.phis == ((12, 1), (18, 1))
        assert fact.residual.is_one()
        # bound below the factors: they stay in the residual
        fact2 = phi_factorize(p, bound=10)
        assert fact2.phis == ()
        assert fact2.residual == p


# ---------------------------------------------------------------------------
# linear algebra


class TestLinalg:
    def test_solve_and_inverse(self):
        q = QPoly.q()
        m = [[RatFunc(q + 1), RatFunc(1)], [RatFunc(1), RatFunc(q)]]
        inv = mat_inverse(m)
        assert mat_mul(m, inv) == identity(2, RatFunc(1))
        x = solve_linear(m, [RatFunc(q * q + q + 1), RatFunc(2 * q)])
        assert x == [RatFunc(q), RatFunc(1)]

    def test_singular_raises(self):
        m = [[CycQ(1), CycQ(2)], [CycQ(2), CycQ(4)]]
        with pytest.raises(ValueError):
            solve_linear(m, [CycQ(1), CycQ(1)])

    def test_determinant_stays_polynomial(self):
        q = QPoly.q()
        m = [
            [q + 1, q, QPoly([2])],
            [QPoly(), q - 1, QPoly([1])],
            [QPoly([1]), QPoly(), q],
        ]
        det = determinant(m)
        assert isinstance(det, QPoly)
        assert RatFunc(det) == determinant([[RatFunc(e) for e in row] for row in m])

    @given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3))
    @settings(max_examples=30, deadline=None)
    def test_determinant_multiplicative(self, rows):
        m = [[CycQ(v) for v in row] for row in rows]
        i3 = identity(3, CycQ(1))
        from greenfn.linalg import mat_mul as mm

        assert determinant(mm(m, i3)) == determinant(m)
