"""
Tests for exact scalars, polynomials and rational functions.
"""

from fractions import Fraction

import pytest

from loop_factor.errors import EvalAtPole, InvalidRealPole, NonSplittingDenominator, ParseError
from loop_factor.exactnum import (
    I_UNIT,
    INFINITY,
    ONE,
    ZERO,
    MoebiusChart,
    Polynomial,
    RationalFunction,
    conj,
    format_scalar,
    gq,
    parse_scalar,
    rf_normalize,
)


class TestScalars:
    """Parsing and formatting of Gaussian rationals."""

    def test_parse_full_form(self):
        """Both parts with fractions."""
        assert parse_scalar("1/2+3/4*i") == gq(Fraction(1, 2), Fraction(3, 4))

    def test_parse_partial_forms(self):
        """Either part may be omitted."""
        assert parse_scalar("-2") == gq(-2)
        assert parse_scalar("i") == I_UNIT
        assert parse_scalar("-i") == gq(0, -1)
        assert parse_scalar("2-5*i") == gq(2, -5)

    @pytest.mark.parametrize("text", ["", "abc", "3i", "1/0", "1+1/0*i", "2**i"])
    def test_parse_rejects_malformed(self, text):
        """Malformed scalars raise ParseError."""
        with pytest.raises(ParseError):
            parse_scalar(text)

    def test_format(self):
        """Zero parts are omitted and unit imaginary parts are bare."""
        assert format_scalar(gq(2, -3)) == "2-3*i"
        assert format_scalar(gq(0, 1)) == "i"
        assert format_scalar(gq(0, -1)) == "-i"
        assert format_scalar(gq(Fraction(-1, 2))) == "-1/2"
        assert format_scalar(gq(1, Fraction(1, 2))) == "1+1/2*i"

    def test_format_parse_agree(self):
        """Formatted scalars parse back to themselves."""
        for z in (gq(3, 4), gq(Fraction(5, 7), -1), gq(0, Fraction(-2, 3)), ZERO):
            assert parse_scalar(format_scalar(z)) == z

    def test_conj(self):
        assert conj(gq(1, 2)) == gq(1, -2)


class TestPolynomial:
    """Polynomials over Q(i)."""

    def test_split_gaussian_roots(self):
        """x^2 + 1 splits over Q(i)."""
        roots = dict(Polynomial.from_coeffs([1, 0, 1]).split())
        assert roots == {I_UNIT: 1, gq(0, -1): 1}

    def test_split_multiplicities(self):
        p = Polynomial.linear_factor(I_UNIT) ** 2 * Polynomial.linear_factor(gq(-1))
        assert dict(p.split()) == {I_UNIT: 2, gq(-1): 1}

    def test_split_rejects_irreducible_quadratic(self):
        """x^2 - 2 has no roots in Q(i)."""
        with pytest.raises(NonSplittingDenominator):
            Polynomial.from_coeffs([-2, 0, 1]).split()

    def test_root_multiplicity(self):
        p = Polynomial.linear_factor(ONE) ** 3
        assert p.root_multiplicity(ONE) == 3
        assert p.root_multiplicity(I_UNIT) == 0


class TestRationalFunction:
    """Canonical rational functions in lam."""

    def test_build_cancels_common_roots(self):
        """(lam - i) / (lam - i) reduces to 1."""
        f = RationalFunction.build(Polynomial.linear_factor(I_UNIT), [(I_UNIT, 1)])
        assert f == RationalFunction.one()

    def test_mobius_inverse(self, alpha):
        """mu * mu^-1 is exactly 1."""
        product = RationalFunction.mobius(alpha) * RationalFunction.mobius(alpha, -1)
        assert product == RationalFunction.one()

    def test_mobius_values(self, alpha):
        mu = RationalFunction.mobius(alpha)
        assert mu.evaluate(alpha) == ZERO
        assert mu.evaluate(INFINITY) == ONE

    def test_evaluate_at_pole_raises(self, alpha):
        with pytest.raises(EvalAtPole):
            RationalFunction.mobius(alpha).evaluate(conj(alpha))

    def test_orders(self):
        f = RationalFunction.build(Polynomial.linear_factor(ONE) ** 2, [(I_UNIT, 3)])
        assert f.pole_order(I_UNIT) == 3
        assert f.pole_order(ONE) == 0
        assert f.zero_order(ONE) == 2
        assert f.finite_at_infinity

    def test_conj_coeff_of_mobius(self, alpha):
        """Conjugating coefficients of mu gives mu^-1."""
        assert RationalFunction.mobius(alpha).conj_coeff() == RationalFunction.mobius(alpha, -1)

    def test_reflect(self):
        """1/(lam - i) at -lam is -1/(lam + i)."""
        f = RationalFunction.build(Polynomial.constant(1), [(I_UNIT, 1)])
        expected = RationalFunction.build(Polynomial.constant(-1), [(gq(0, -1), 1)])
        assert f.reflect() == expected

    def test_inverse(self, alpha):
        f = RationalFunction.mobius(alpha, 2).scale(gq(3))
        assert f * f.inverse() == RationalFunction.one()

    def test_normalize_splits_denominator(self):
        f = rf_normalize(Polynomial.constant(1), Polynomial.from_coeffs([1, 0, 1]))
        assert set(f.poles()) == {I_UNIT, gq(0, -1)}


class TestLaurent:
    """Expansion in the Moebius chart at a pole."""

    def test_mobius_is_the_chart_coordinate(self, alpha):
        """mu expands to mu itself."""
        coeffs = RationalFunction.mobius(alpha).laurent(alpha, -1, 2)
        assert coeffs == [ZERO, ZERO, ONE, ZERO]

    def test_inverse_mobius(self, alpha):
        coeffs = RationalFunction.mobius(alpha, -1).laurent(alpha, -1, 1)
        assert coeffs == [ONE, ZERO, ZERO]

    def test_constant(self, alpha):
        coeffs = RationalFunction.constant(gq(2, 1)).laurent(alpha, 0, 1)
        assert coeffs == [gq(2, 1), ZERO]

    def test_chart_rejects_real_centre(self):
        with pytest.raises(InvalidRealPole):
            MoebiusChart(gq(1))

    def test_chart_inverse(self, alpha):
        assert MoebiusChart(alpha).lam_at(ZERO) == alpha
