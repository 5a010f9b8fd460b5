"""
Tests for stratmoments.exact and the Monomial model.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stratmoments.exact import (
    RationalParseError,
    factorial,
    format_rational,
    monomial_eval,
    parse_rational,
)
from stratmoments.models import Monomial


big_ints = st.integers(min_value=-(10 ** 60), max_value=10 ** 60)
big_rationals = st.builds(
    Fraction, big_ints, st.integers(min_value=1, max_value=10 ** 60)
)


# ---------------------------------------------------------------------------
# Tests: factorial
# ---------------------------------------------------------------------------

class TestFactorial:
    """Tests for factorial."""

    @pytest.mark.parametrize("n, expected", [(7, 5040), (0, 1), (4, 24)])
    def test_values(self, n, expected):
        assert factorial(n) == expected

    def test_beyond_64_bits(self):
        assert factorial(21) == 51090942171709440000
        assert factorial(21) > 2 ** 64

    def test_negative(self):
        with pytest.raises(ValueError):
            factorial(-1)


# ---------------------------------------------------------------------------
# Tests: Monomial
# ---------------------------------------------------------------------------

class TestMonomial:
    """Tests for Monomial construction, rendering and evaluation."""

    def test_eval_examples(self):
        assert monomial_eval(Monomial(Fraction(1, 48), 4), Fraction(1)) == Fraction(1, 48)
        assert monomial_eval(Monomial.zero(), Fraction(7)) == 0
        assert monomial_eval(Monomial(Fraction(1, 2), 1), Fraction(2)) == 1

    def test_eval_is_exact(self):
        m = Monomial(Fraction(1, 40320), 7)
        assert monomial_eval(m, Fraction(1, 3)) == Fraction(1, 40320 * 3 ** 7)

    def test_zero_is_canonical(self):
        m = Monomial(Fraction(0), 5)
        assert m.power == 0
        assert m == Monomial.zero()

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            Monomial(Fraction(1), -1)

    @pytest.mark.parametrize("monomial, text", [
        (Monomial(Fraction(1, 48), 4), "1/48 * t^4"),
        (Monomial.zero(), "0"),
        (Monomial(Fraction(1), 0), "1"),
        (Monomial(Fraction(1, 2), 1), "1/2 * t^1"),
        (Monomial(Fraction(1, 40320), 7), "1/40320 * t^7"),
    ])
    def test_rendering(self, monomial, text):
        assert str(monomial) == text

    def test_add_same_power(self):
        total = Monomial(Fraction(1, 4), 2) + Monomial(Fraction(1, 4), 2)
        assert total == Monomial(Fraction(1, 2), 2)

    def test_add_zero(self):
        m = Monomial(Fraction(1, 6), 3)
        assert m + Monomial.zero() == m
        assert Monomial.zero() + m == m

    def test_add_cancels_to_zero(self):
        total = Monomial(Fraction(1, 2), 3) + Monomial(Fraction(-1, 2), 3)
        assert total == Monomial.zero()

    def test_add_different_powers(self):
        with pytest.raises(ValueError):
            Monomial(Fraction(1), 1) + Monomial(Fraction(1), 2)

    def test_scaled(self):
        assert Monomial(Fraction(1, 6), 3).scaled(Fraction(1, 2)) == Monomial(Fraction(1, 12), 3)


# ---------------------------------------------------------------------------
# Tests: rationals
# ---------------------------------------------------------------------------

class TestRationals:
    """Exactness of the rational layer."""

    @given(big_rationals, big_rationals)
    def test_add_subtract_round_trip(self, a, b):
        assert (a + b) - b == a

    @given(big_rationals, big_rationals)
    def test_multiply_divide_round_trip(self, a, b):
        if b != 0:
            assert (a * b) / b == a

    @given(big_rationals, big_rationals)
    def test_lowest_terms(self, a, b):
        for value in (a + b, a * b, a - b):
            assert value.denominator > 0
            assert math.gcd(abs(value.numerator), value.denominator) == 1

    def test_zero_is_zero_over_one(self):
        zero = Fraction(3, 7) - Fraction(3, 7)
        assert (zero.numerator, zero.denominator) == (0, 1)

    @pytest.mark.parametrize("value, text", [
        (Fraction(1, 48), "1/48"),
        (Fraction(3), "3"),
        (Fraction(0), "0"),
        (Fraction(-1, 2), "-1/2"),
    ])
    def test_format_rational(self, value, text):
        assert format_rational(value) == text

    @pytest.mark.parametrize("text, value", [
        ("1/2", Fraction(1, 2)),
        ("3", Fraction(3)),
        ("0.25", Fraction(1, 4)),
        ("0.1", Fraction(1, 10)),
        ("1e-2", Fraction(1, 100)),
        (" 7/14 ", Fraction(1, 2)),
        ("-2", Fraction(-2)),
    ])
    def test_parse_rational(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", [
        "abc", "1/0", "1/2/3", "", "1 / 2", "inf", "nan", "\u0661/\u0662", "\uff11.5",
    ])
    def test_parse_rational_rejects(self, text):
        with pytest.raises(RationalParseError):
            parse_rational(text)
