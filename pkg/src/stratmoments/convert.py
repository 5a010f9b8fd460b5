"""
Stratonovich to Ito decomposition.

J_alpha = int J_alpha- dW^a_l + 1/2 chi(a_(l-1) = a_l != 0) int J_alpha-- ds

Applied from the right end of the word, this writes J_alpha as a rational
combination of Ito integrals with at most one all-zero word among the keys.
Taking expectations of that combination gives a second, independent route
to E J_alpha.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from .config import (
    DEFAULT_DECOMPOSITION_MAX_LEN,
    DEFAULT_DECOMPOSITION_MAX_TERMS,
    ResourceCapError,
)
from .exact import factorial
from .models import ItoCombination, Monomial, Word

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

# Prefix decompositions kept across calls; lru_cache locks its bookkeeping,
# so concurrent callers always read complete entries.
_MEMO_SIZE = 1 << 16


class DecompositionCapError(ResourceCapError):
    """Raised when a decomposition exceeds the word-length or term-count cap."""


class InconsistentDecompositionError(RuntimeError):
    """Raised when a combination has more than one all-zero Ito word."""


@lru_cache(maxsize=_MEMO_SIZE)
def _decompose(letters: Tuple[int, ...]) -> ItoCombination:
    if not letters:
        return ItoCombination.unit()

    last = letters[-1]
    result = _decompose(letters[:-1]).append_letter(last)
    if len(letters) >= 2 and letters[-2] == last and last != 0:
        correction = _decompose(letters[:-2]).append_letter(0).scaled(HALF)
        result = result + correction
    return result


def _check_structure(alpha: Word, combination: ItoCombination) -> None:
    zero_words = combination.all_zero_words()
    if len(zero_words) > 1:
        raise InconsistentDecompositionError(
            f"J[{alpha}] decomposed with {len(zero_words)} all-zero Ito words: "
            + ", ".join(f"I[{w}]" for w in zero_words)
        )


def strat_to_ito(
    alpha: Word,
    *,
    max_len: int = DEFAULT_DECOMPOSITION_MAX_LEN,
    max_terms: int = DEFAULT_DECOMPOSITION_MAX_TERMS,
) -> ItoCombination:
    """
    Expand J_alpha in the Ito basis.

    Prefixes are decomposed shortest first, so each level reuses the two
    cached levels below it and the term cap is checked before the next
    doubling.

    Args:
        alpha: Word to decompose
        max_len: Longest word accepted
        max_terms: Largest number of Ito terms accepted at any level

    Returns:
        ItoCombination equal to J_alpha
    """
    if len(alpha) > max_len:
        raise DecompositionCapError(
            f"Word of length {len(alpha)} exceeds the decomposition cap of {max_len}"
        )

    letters = alpha.letters
    combination = ItoCombination.unit()
    for k in range(1, len(letters) + 1):
        combination = _decompose(letters[:k])
        if len(combination) > max_terms:
            raise DecompositionCapError(
                f"Decomposition of J[{Word(letters[:k])}] has {len(combination)} terms, "
                f"more than the cap of {max_terms}"
            )

    _check_structure(alpha, combination)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            "J[%s] -> %d Ito terms (%s)", alpha, len(combination), _decompose.cache_info()
        )
    return combination


def combination_p_q(c: ItoCombination) -> Optional[Tuple[Fraction, int]]:
    """
    The all-zero term p * I_(0,...,0) of a decomposition.

    Returns:
        (p, q) with q the length of the all-zero word, or None when the
        combination has no all-zero word (zero expectation)
    """
    zero_words = c.all_zero_words()
    if len(zero_words) > 1:
        raise InconsistentDecompositionError(
            f"Combination has {len(zero_words)} all-zero Ito words: "
            + ", ".join(f"I[{w}]" for w in zero_words)
        )
    if not zero_words:
        return None
    word = zero_words[0]
    return c.coefficient(word), len(word)


def expect_ito(beta: Word) -> Monomial:
    """E I_beta(t): zero if beta has a Wiener letter, else t^l / l!."""
    if not beta.is_all_zero:
        return Monomial.zero()
    length = len(beta)
    return Monomial(Fraction(1, factorial(length)), length)


def expect_combination(c: ItoCombination) -> Monomial:
    """Expectation of sum c_beta I_beta, term by term."""
    total = Monomial.zero()
    for word, coeff in c.terms.items():
        try:
            total = total + expect_ito(word).scaled(coeff)
        except ValueError as e:
            raise InconsistentDecompositionError(str(e)) from e
    return total
