"""
Exact arithmetic for expectations.

Rationals are ``fractions.Fraction`` (arbitrary precision, always in lowest
terms). Expectations are single monomials coeff * t^power.
"""

import math
import re
from fractions import Fraction

from .models import Monomial, format_rational

Rational = Fraction

_RATIONAL_PATTERN = re.compile(
    r"^[+-]?[0-9]+(/[0-9]+)?$"
    r"|^[+-]?([0-9]+\.[0-9]*|\.[0-9]+|[0-9]+)([eE][+-]?[0-9]+)?$"
)

__all__ = [
    "Rational",
    "RationalParseError",
    "factorial",
    "format_rational",
    "monomial_eval",
    "parse_rational",
]


class RationalParseError(ValueError):
    """Raised when a string is not a rational number."""


def factorial(n: int) -> int:
    """n! as an exact integer."""
    if n < 0:
        raise ValueError(f"factorial is undefined for negative n: {n}")
    return math.factorial(n)


def monomial_eval(m: Monomial, t: Fraction) -> Fraction:
    """Evaluate coeff * t^power exactly."""
    if m.is_zero:
        return Fraction(0)
    return m.coeff * Fraction(t) ** m.power


def parse_rational(text: str) -> Fraction:
    """
    Parse ``a/b``, an integer or a decimal literal into an exact rational.

    Decimals are read exactly: "0.1" is 1/10, not the nearest double.
    """
    token = text.strip()
    if not _RATIONAL_PATTERN.match(token):
        raise RationalParseError(f"Not a rational number: {text!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise RationalParseError(f"Zero denominator: {text!r}") from None
