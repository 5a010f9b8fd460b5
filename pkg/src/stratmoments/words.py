"""
Words - parsing, counting and enumeration of multi-indices.

A word is "zero-pair" when it splits into blocks that are either the time
letter 0 or a pair m,m of equal Wiener letters. Exactly these words have a
nonzero Stratonovich expectation.

Text format: comma-separated nonnegative integers, whitespace around tokens
ignored, the empty string is the empty word.
"""

import itertools
import re
from typing import Iterator, List

from .config import DEFAULT_ENUMERATION_MAX_LEN, ResourceCapError
from .models import Word, sorted_words

_LETTER_PATTERN = re.compile(r"^[0-9]+$")


class WordParseError(ValueError):
    """Raised when a word string contains a malformed letter."""

    def __init__(self, token: str, text: str):
        self.token = token
        self.text = text
        super().__init__(
            f"Invalid letter {token!r} in word {text!r}: "
            "expected a nonnegative integer"
        )


class EnumerationCapError(ResourceCapError):
    """Raised when an enumeration would exceed the configured length cap."""


def parse_word(text: str) -> Word:
    """
    Parse a comma-separated word.

    Examples:
        "0,1,1,0,0" -> Word[0,1,1,0,0]
        ""          -> Word[]
    """
    if not text.strip():
        return Word()

    letters = []
    for raw in text.split(","):
        token = raw.strip()
        if not _LETTER_PATTERN.match(token):
            raise WordParseError(token, text)
        letters.append(int(token))
    return Word(tuple(letters))


def render_word(w: Word) -> str:
    return str(w)


def zero_count(w: Word) -> int:
    """Number of time letters."""
    return sum(1 for letter in w if letter == 0)


def nonzero_count(w: Word) -> int:
    """Number of Wiener letters."""
    return sum(1 for letter in w if letter != 0)


def is_zero_pair_word(w: Word) -> bool:
    """
    True iff w is a concatenation of blocks ``0`` and ``m,m`` (m != 0).

    Scans right to left. A Wiener letter can only be consumed together with
    its left neighbour, so the greedy scan never has to backtrack.
    """
    i = len(w) - 1
    while i >= 0:
        if w[i] == 0:
            i -= 1
        elif i >= 1 and w[i - 1] == w[i]:
            i -= 2
        else:
            return False
    return True


def count_nonzero_words(length: int, num_wiener: int) -> int:
    """
    Number of zero-pair words of exactly ``length`` letters.

    a(l) = a(l-1) + num_wiener * a(l-2), a(0) = a(1) = 1
    """
    if length < 0:
        raise ValueError(f"length must be nonnegative, got {length}")
    previous, current = 1, 1
    for _ in range(length - 1):
        previous, current = current, current + num_wiener * previous
    return current


def iter_words(max_len: int, num_drivers: int) -> Iterator[Word]:
    """
    Every word over {0, ..., num_drivers - 1} of length <= max_len.

    Length first, then lexicographic. This is the brute-force space the
    zero-pair enumeration is checked against.
    """
    for length in range(max_len + 1):
        for letters in itertools.product(range(num_drivers), repeat=length):
            yield Word(letters)


def enumerate_nonzero_words(
    max_len: int,
    num_wiener: int,
    *,
    max_len_cap: int = DEFAULT_ENUMERATION_MAX_LEN,
) -> List[Word]:
    """
    All zero-pair words over drivers {0, 1, ..., num_wiener} up to max_len.

    Built by length: a word of length l is a word of length l-1 followed by
    0, or a word of length l-2 followed by a pair m,m.

    Args:
        max_len: Longest word to produce
        num_wiener: Number of Wiener drivers (letters 1..num_wiener)
        max_len_cap: Refuse to enumerate beyond this length

    Returns:
        Words in length-then-lexicographic order
    """
    if max_len < 0:
        raise ValueError(f"max_len must be nonnegative, got {max_len}")
    if num_wiener < 1:
        raise ValueError(f"num_wiener must be >= 1, got {num_wiener}")
    if max_len > max_len_cap:
        raise EnumerationCapError(
            f"max_len {max_len} exceeds the enumeration cap of {max_len_cap}"
        )

    by_length: List[List[Word]] = [[Word()]]
    for length in range(1, max_len + 1):
        level = [w.append(0) for w in by_length[length - 1]]
        if length >= 2:
            for w in by_length[length - 2]:
                for m in range(1, num_wiener + 1):
                    level.append(w.append(m).append(m))
        by_length.append(sorted_words(level))

    return [w for level in by_length for w in level]
