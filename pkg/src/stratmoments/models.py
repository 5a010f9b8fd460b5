"""
Core data models for stratmoments.

- Word: a multi-index, the sequence of drivers an iterated integral uses
- Monomial: an expectation coeff * t^power with an exact coefficient
- ItoCombination: a Stratonovich integral written in the Ito basis
- ExpectResult: closed-form expectation plus the counts it was built from
- SimConfig / SimResult: Monte Carlo parameters and estimate
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple


def format_rational(value: Fraction) -> str:
    """Render a rational as ``num/den``, dropping ``/1``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Word:
    """
    A multi-index over drivers.

    Letter 0 is the time driver (dW^0 = dt), letters >= 1 are independent
    Wiener processes. The empty word is allowed: J_() = I_() = 1.
    """

    letters: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        for letter in letters:
            if isinstance(letter, bool) or not isinstance(letter, int):
                raise ValueError(f"Word letters must be integers, got {letter!r}")
            if letter < 0:
                raise ValueError(f"Word letters must be nonnegative, got {letter}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def of(cls, *letters: int) -> "Word":
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, index: int) -> int:
        return self.letters[index]

    @property
    def minus(self) -> "Word":
        """The word with its last letter removed."""
        return Word(self.letters[:-1])

    @property
    def minus_minus(self) -> "Word":
        """The word with its last two letters removed."""
        return Word(self.letters[:-2])

    def append(self, letter: int) -> "Word":
        return Word(self.letters + (letter,))

    def reversed(self) -> "Word":
        return Word(self.letters[::-1])

    @property
    def is_all_zero(self) -> bool:
        """True for words made only of time letters (the empty word included)."""
        return all(letter == 0 for letter in self.letters)

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Length first, then lexicographic."""
        return (len(self.letters), self.letters)

    def to_json(self) -> List[int]:
        return list(self.letters)

    def __str__(self) -> str:
        return ",".join(str(letter) for letter in self.letters)


@dataclass(frozen=True)
class Monomial:
    """
    The function t -> coeff * t^power.

    The zero monomial is canonical: coeff 0 always carries power 0.
    """

    coeff: Fraction = Fraction(0)
    power: int = 0

    def __post_init__(self) -> None:
        coeff = Fraction(self.coeff)
        if self.power < 0:
            raise ValueError(f"Monomial power must be nonnegative, got {self.power}")
        object.__setattr__(self, "coeff", coeff)
        if coeff == 0:
            object.__setattr__(self, "power", 0)

    @classmethod
    def zero(cls) -> "Monomial":
        return cls(Fraction(0), 0)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def scaled(self, factor: Fraction) -> "Monomial":
        return Monomial(self.coeff * Fraction(factor), self.power)

    def __add__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.power != other.power:
            raise ValueError(
                f"Cannot add monomials of different powers: t^{self.power} and t^{other.power}"
            )
        return Monomial(self.coeff + other.coeff, self.power)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if self.power == 0:
            return format_rational(self.coeff)
        return f"{format_rational(self.coeff)} * t^{self.power}"


class ItoCombination:
    """
    A finite linear combination sum c_beta I_beta of Ito iterated integrals.

    Immutable. Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Word, Fraction]] = None):
        cleaned: Dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff != 0:
                cleaned[word] = coeff
        self._terms = MappingProxyType(cleaned)

    @classmethod
    def unit(cls) -> "ItoCombination":
        """The decomposition of the empty word: {[] -> 1}."""
        return cls({Word(): Fraction(1)})

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return self._terms

    def coefficient(self, word: Word) -> Fraction:
        return self._terms.get(word, Fraction(0))

    def append_letter(self, letter: int) -> "ItoCombination":
        """Integrate every term against driver ``letter``: I_beta -> I_(beta, letter)."""
        return ItoCombination({w.append(letter): c for w, c in self._terms.items()})

    def scaled(self, factor: Fraction) -> "ItoCombination":
        factor = Fraction(factor)
        return ItoCombination({w: c * factor for w, c in self._terms.items()})

    def __add__(self, other: "ItoCombination") -> "ItoCombination":
        if not isinstance(other, ItoCombination):
            return NotImplemented
        merged = dict(self._terms)
        for word, coeff in other._terms.items():
            merged[word] = merged.get(word, Fraction(0)) + coeff
        return ItoCombination(merged)

    def all_zero_words(self) -> List[Word]:
        return [w for w in self._terms if w.is_all_zero]

    def sorted_terms(self) -> List[Tuple[Word, Fraction]]:
        """Terms ordered by word length, then lexicographically."""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ItoCombination):
            return dict(self._terms) == dict(other._terms)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        inner = ", ".join(f"[{w}]: {format_rational(c)}" for w, c in self.sorted_terms())
        return f"ItoCombination({{{inner}}})"


@dataclass(frozen=True)
class ExpectResult:
    """Closed-form expectation E J_alpha(t) together with its two counts."""

    monomial: Monomial
    halvings: int = 0             # number of mm pairs, #{alpha_i != 0} / 2
    q: int = 0                    # power of t
    nonzero: bool = False
    iterations: int = 0           # scan steps taken

    @property
    def p(self) -> Fraction:
        if not self.nonzero:
            return Fraction(0)
        return Fraction(1, 2 ** self.halvings)


@dataclass(frozen=True)
class SimConfig:
    """Monte Carlo parameters on a uniform grid of ``steps`` cells over [0, horizon]."""

    word: Word
    horizon: float = 1.0
    steps: int = 256
    paths: int = 10_000
    seed: int = 0

    @property
    def dt(self) -> float:
        return self.horizon / self.steps

    @property
    def work(self) -> int:
        """Units of work counted against the simulation budget."""
        return self.paths * self.steps * max(len(self.word), 1)

    def validate(self) -> List[str]:
        """Return list of validation errors (empty if valid)."""
        errors: List[str] = []
        horizon = self.horizon
        if not isinstance(horizon, (int, float)) or not (0.0 < float(horizon) < float("inf")):
            errors.append(f"horizon must be a positive finite number, got {horizon!r}")
        if self.steps < 1:
            errors.append(f"steps must be >= 1, got {self.steps}")
        if self.paths < 1:
            errors.append(f"paths must be >= 1, got {self.paths}")
        if not 0 <= self.seed < 2 ** 64:
            errors.append(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        return errors

    def to_json(self) -> dict:
        return {
            "word": self.word.to_json(),
            "horizon": self.horizon,
            "steps": self.steps,
            "paths": self.paths,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class SimResult:
    """Monte Carlo estimate of E J_word(horizon)."""

    mean: float
    std_error: float
    paths: int
    exact: Optional[Fraction] = None
    config: Optional[SimConfig] = field(default=None, compare=False)

    @property
    def z(self) -> Optional[float]:
        """Standardized deviation from the exact value, None when undefined."""
        if self.exact is None or self.std_error == 0:
            return None
        return (self.mean - float(self.exact)) / self.std_error


class OutputFormat(Enum):
    """Output format of CLI commands."""
    TEXT = "text"
    JSON = "json"


def sorted_words(words: Iterable[Word]) -> List[Word]:
    """Sort words by length, then lexicographically."""
    return sorted(words, key=lambda w: w.sort_key)
