"""Tests for the exact arithmetic layer."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdmaps.exact import (
    DivisionByZero,
    ParseError,
    PoleError,
    Polynomial,
    RationalFunction,
    UndefinedGcd,
    UndefinedRoots,
    format_polynomial,
    format_rational_function,
    parse_polynomial,
    parse_rational_function,
    poly_gcd,
    rational_roots,
)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
polys = st.lists(rationals, min_size=0, max_size=5).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero)


def P(*coeffs):
    return Polynomial(coeffs)


class TestPolynomial:
    def test_canonical_trailing_zeros(self):
        assert P(1, 2, 0, 0) == P(1, 2)
        assert P(0, 0).is_zero
        assert P().degree == float("-inf")
        assert P(5).degree == 0
        assert P(0, 0, 3).degree == 2

    def test_arithmetic_known_values(self):
        x = Polynomial.variable()
        assert (x + 1) * (x - 1) == P(-1, 0, 1)
        assert (x + 1) ** 2 == P(1, 2, 1)
        assert x**4 - 3 * x**3 + 2 * x**2 == P(0, 0, 2, -3, 1)

    def test_evaluation_horner(self):
        p = P(0, 0, 2, -3, 1)  # t^4 - 3t^3 + 2t^2
        assert p(Fraction(2)) == 0
        assert p(Fraction(3)) == 18
        assert p(Fraction(1, 2)) == Fraction(3, 16)

    def test_divmod(self):
        num = P(-1, 0, 1)
        q, r = divmod(num, P(-1, 1))
        assert q == P(1, 1) and r.is_zero
        q, r = divmod(P(1, 0, 1), P(-1, 1))
        assert q == P(1, 1) and r == P(2)
        with pytest.raises(DivisionByZero):
            divmod(num, P())

    @given(polys, nonzero_polys)
    def test_divmod_invariant(self, a, b):
        q, r = divmod(a, b)
        assert a == q * b + r
        assert r.is_zero or r.degree < b.degree

    @given(polys, polys, polys)
    @settings(max_examples=50)
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c

    def test_compose_power_spreads_exponents(self):
        p = P(1, 2, 3)
        assert p.compose_power(2) == P(1, 0, 2, 0, 3)
        assert p.compose_power(1) == p

    @given(polys, polys, st.integers(min_value=1, max_value=3))
    @settings(max_examples=50)
    def test_compose_power_is_multiplicative(self, a, b, k):
        assert (a * b).compose_power(k) == a.compose_power(k) * b.compose_power(k)

    def test_primitive_part(self):
        p = Polynomial([Fraction(1, 2), Fraction(3, 4)])
        prim = p.primitive_part()
        assert prim == P(2, 3)
        assert P(-2, -4).primitive_part() == P(1, 2)


class TestPolyGcd:
    def test_known_gcd(self):
        # gcd(u^2 - 1, u^2 - 2u + 1) = u - 1
        assert poly_gcd(P(-1, 0, 1), P(1, -2, 1)) == P(-1, 1)

    def test_gcd_with_zero(self):
        assert poly_gcd(P(0, 2), P()) == P(0, 1)
        with pytest.raises(UndefinedGcd):
            poly_gcd(P(), P())

    @given(nonzero_polys, nonzero_polys)
    @settings(max_examples=50)
    def test_gcd_divides_both_and_is_monic(self, a, b):
        g = poly_gcd(a, b)
        assert g.leading == 1
        assert (a % g).is_zero
        assert (b % g).is_zero

    @given(nonzero_polys, nonzero_polys, nonzero_polys)
    @settings(max_examples=30)
    def test_gcd_absorbs_common_factor(self, a, b, c):
        g = poly_gcd(a * c, b * c)
        assert ((a * c) % g).is_zero
        # the shared factor c must divide the gcd
        assert (g % c.monic()).is_zero


class TestRationalRoots:
    def test_constraint_polynomial_roots(self):
        roots = rational_roots(P(0, 0, 2, -3, 1))
        assert roots == {Fraction(0): 2, Fraction(1): 1, Fraction(2): 1}

    def test_fractional_roots(self):
        # (2x - 1)(3x + 2) = 6x^2 + x - 2
        assert rational_roots(P(-2, 1, 6)) == {
            Fraction(1, 2): 1,
            Fraction(-2, 3): 1,
        }

    def test_no_rational_roots(self):
        assert rational_roots(P(-2, 0, 1)) == {}
        assert rational_roots(P(1, 0, 1)) == {}

    def test_constant_and_zero(self):
        assert rational_roots(P(5)) == {}
        with pytest.raises(UndefinedRoots):
            rational_roots(P())

    @given(st.lists(rationals, min_size=1, max_size=3))
    @settings(max_examples=30)
    def test_constructed_roots_are_found(self, rs):
        x = Polynomial.variable()
        p = P(1)
        for r in rs:
            p = p * (x - r)
        found = rational_roots(p)
        for r in rs:
            assert found.get(r, 0) == rs.count(r)


class TestRationalFunction:
    def test_canonical_reduction(self):
        f = RationalFunction(P(-1, 0, 1), P(-1, 1))  # (x^2-1)/(x-1) = x+1
        assert f == RationalFunction(P(1, 1))
        assert f.den == P(1)

    def test_monic_denominator(self):
        f = RationalFunction(P(1), P(0, 2))
        assert f.den == P(0, 1)
        assert f.num == P(Fraction(1, 2))

    def test_zero_denominator_rejected(self):
        with pytest.raises(DivisionByZero):
            RationalFunction(P(1), P())

    def test_known_evaluations(self):
        t = RationalFunction.variable()
        one = RationalFunction(1)
        f3 = (t + one) / (t - one)
        assert f3.evaluate(Fraction(2)) == 3
        f5 = (t * t + one) / ((t - one) * (t - one))
        assert f5.evaluate(Fraction(2)) == 5

    def test_pole(self):
        t = RationalFunction.variable()
        f = RationalFunction(1) / (t - 1)
        with pytest.raises(PoleError):
            f.evaluate(Fraction(1))

    def test_division_by_zero_function(self):
        t = RationalFunction.variable()
        with pytest.raises(DivisionByZero):
            t / RationalFunction(0)

    @given(polys, nonzero_polys, polys, nonzero_polys)
    @settings(max_examples=40)
    def test_field_axioms(self, a, b, c, d):
        f = RationalFunction(a, b)
        g = RationalFunction(c, d)
        assert f + g == g + f
        assert f * g == g * f
        assert f - g == -(g - f)
        if not g.is_zero:
            assert (f / g) * g == f

    @given(polys, nonzero_polys, st.integers(min_value=1, max_value=3))
    @settings(max_examples=40)
    def test_compose_power_stays_reduced(self, a, b, k):
        f = RationalFunction(a, b)
        g = f.compose_power(k)
        if not g.is_zero:
            assert poly_gcd(g.num, g.den).degree == 0
        assert g.den.leading == 1


class TestLiterals:
    def test_format_polynomial_descending(self):
        assert format_polynomial(P(0, 0, 2, -3, 1), "t") == "t^4 - 3*t^3 + 2*t^2"
        assert format_polynomial(P(), "t") == "0"
        assert format_polynomial(P(Fraction(-1, 2), 1)) == "x - 1/2"

    def test_parse_polynomial(self):
        assert parse_polynomial("t^4 - 3*t^3 + 2*t^2") == P(0, 0, 2, -3, 1)
        assert parse_polynomial("x - 1/2") == P(Fraction(-1, 2), 1)
        assert parse_polynomial("0") == P()
        assert parse_polynomial("-x") == P(0, -1)
        with pytest.raises(ParseError):
            parse_polynomial("x + y")
        with pytest.raises(ParseError):
            parse_polynomial("")

    def test_rational_function_roundtrip_known(self):
        t = RationalFunction.variable()
        one = RationalFunction(1)
        f = (t * t + one) / ((t - one) * (t - one))
        text = format_rational_function(f, "t")
        assert text == "(t^2 + 1)/(t^2 - 2*t + 1)"
        assert parse_rational_function(text, "t") == f

    @given(polys)
    @settings(max_examples=50)
    def test_polynomial_roundtrip(self, p):
        assert parse_polynomial(format_polynomial(p)) == p

    @given(polys, nonzero_polys)
    @settings(max_examples=50)
    def test_rational_function_roundtrip(self, a, b):
        f = RationalFunction(a, b)
        assert parse_rational_function(format_rational_function(f)) == f
