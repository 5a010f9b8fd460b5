"""
Closed-form expectation of Stratonovich iterated integrals.

E J_alpha(t) is zero unless alpha is made of blocks ``0`` and ``m,m``. For
such words, with k pairs and z zeros,

    E J_alpha(t) = (1/2)^k * t^q / q!,   q = k + z.

The word is read right to left in at most len(alpha) steps.
"""

from fractions import Fraction
from typing import List, Tuple

from .config import DEFAULT_ENUMERATION_MAX_LEN
from .exact import factorial, monomial_eval
from .models import ExpectResult, Monomial, Word
from .words import enumerate_nonzero_words


class NegativeTimeError(ValueError):
    """Raised when an expectation is requested before time 0."""


def _closed_form(halvings: int, q: int, iterations: int) -> ExpectResult:
    coeff = Fraction(1, 2 ** halvings * factorial(q))
    return ExpectResult(
        monomial=Monomial(coeff, q),
        halvings=halvings,
        q=q,
        nonzero=True,
        iterations=iterations,
    )


def _zero(iterations: int) -> ExpectResult:
    return ExpectResult(monomial=Monomial.zero(), iterations=iterations)


def expect_strat(alpha: Word) -> ExpectResult:
    """
    E J_alpha(t) by a right-to-left scan.

    A 0 adds one to q; an equal nonzero pair adds one to q and one halving;
    anything else means the expectation is 0.
    """
    i = len(alpha) - 1
    halvings = 0
    q = 0
    iterations = 0
    while i >= 0:
        iterations += 1
        if alpha[i] == 0:
            q += 1
            i -= 1
        elif i >= 1 and alpha[i - 1] == alpha[i]:
            halvings += 1
            q += 1
            i -= 2
        else:
            return _zero(iterations)
    return _closed_form(halvings, q, iterations)


def expect_strat_recursive(alpha: Word) -> ExpectResult:
    """
    E J_alpha(t) by recursion on the word.

    Either alpha ends in 0 and J_alpha- carries the all-zero term, or alpha
    ends in a pair m,m and J_alpha-- does. Recursion depth is len(alpha),
    so prefer :func:`expect_strat` for long words.
    """
    if not alpha:
        return _closed_form(0, 0, 0)
    if alpha[-1] == 0:
        inner = expect_strat_recursive(alpha.minus)
        if not inner.nonzero:
            return _zero(inner.iterations + 1)
        return _closed_form(inner.halvings, inner.q + 1, inner.iterations + 1)
    if len(alpha) >= 2 and alpha[-2] == alpha[-1]:
        inner = expect_strat_recursive(alpha.minus_minus)
        if not inner.nonzero:
            return _zero(inner.iterations + 1)
        return _closed_form(inner.halvings + 1, inner.q + 1, inner.iterations + 1)
    return _zero(1)


def expect_strat_at(alpha: Word, t: Fraction) -> Fraction:
    """E J_alpha(t) as an exact rational."""
    t = Fraction(t)
    if t < 0:
        raise NegativeTimeError(f"Expectations are defined for t >= 0, got t = {t}")
    return monomial_eval(expect_strat(alpha).monomial, t)


def expectation_table(
    max_len: int,
    num_wiener: int,
    *,
    max_len_cap: int = DEFAULT_ENUMERATION_MAX_LEN,
) -> List[Tuple[Word, ExpectResult]]:
    """Every word with a nonzero expectation up to max_len, with its expectation."""
    return [
        (w, expect_strat(w))
        for w in enumerate_nonzero_words(max_len, num_wiener, max_len_cap=max_len_cap)
    ]
