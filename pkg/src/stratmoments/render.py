"""
Output formatters for stratmoments commands.

Each command has a text form for terminals and a JSON form (one document
per invocation) carrying the same information. Exact values are always
rendered as rationals; Monte Carlo estimates as decimals with 6
significant digits.
"""

import json
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .models import ExpectResult, ItoCombination, Monomial, SimResult, Word, format_rational


def format_decimal(value: float) -> str:
    return f"{value:.6g}"


def format_p(result: ExpectResult) -> str:
    """p as a power of one half: ``1``, ``1/2``, ``1/2^3``; ``0`` if zero."""
    if not result.nonzero:
        return "0"
    if result.halvings == 0:
        return "1"
    if result.halvings == 1:
        return "1/2"
    return f"1/2^{result.halvings}"


# ---------------------------------------------------------------------------
# expect
# ---------------------------------------------------------------------------

def format_expect_text(monomial: Monomial, t: Optional[Fraction] = None,
                       value: Optional[Fraction] = None) -> str:
    lines = [str(monomial)]
    if t is not None and value is not None:
        lines.append(f"t={format_rational(t)}: {format_rational(value)}")
    return "\n".join(lines)


def format_expect_json(word: Word, monomial: Monomial, t: Optional[Fraction] = None,
                       value: Optional[Fraction] = None) -> str:
    output = {
        "word": word.to_json(),
        "coeff": format_rational(monomial.coeff),
        "power": monomial.power,
    }
    if t is not None and value is not None:
        output["t"] = format_rational(t)
        output["value"] = format_rational(value)
    return json.dumps(output, indent=2)


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------

def _ito_term(word: Word, coeff: Fraction) -> str:
    if coeff == 1:
        return f"I[{word}]"
    return f"{format_rational(coeff)} I[{word}]"


def format_decompose_text(combination: ItoCombination) -> str:
    """Longest Ito words first, then lexicographic: ``I[1,1] + 1/2 I[0]``."""
    terms = sorted(combination.terms.items(), key=lambda item: (-len(item[0]), item[0].letters))
    if not terms:
        return "0"
    return " + ".join(_ito_term(w, c) for w, c in terms)


def format_decompose_json(word: Word, combination: ItoCombination) -> str:
    output = {
        "word": word.to_json(),
        "terms": [
            {"word": w.to_json(), "coeff": format_rational(c)}
            for w, c in combination.sorted_terms()
        ],
    }
    return json.dumps(output, indent=2)


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def format_table_text(rows: Sequence[Tuple[Word, ExpectResult]]) -> str:
    lines = []
    lines.append(f"{'word':<24} {'p':<10} {'q':>3}  E J(t)")
    lines.append(f"{'-' * 24} {'-' * 10} {'-' * 3}  {'-' * 16}")
    for word, result in rows:
        label = f"[{word}]"
        lines.append(f"{label:<24} {format_p(result):<10} {result.q:>3}  {result.monomial}")
    lines.append("")
    lines.append(f"{len(rows)} words with nonzero expectation.")
    return "\n".join(lines)


def format_table_json(rows: Sequence[Tuple[Word, ExpectResult]]) -> str:
    json_rows: List[dict] = []
    for word, result in rows:
        p = result.p
        json_rows.append({
            "word": word.to_json(),
            "p_num": p.numerator,
            "p_den": p.denominator,
            "q": result.q,
            "coeff": format_rational(result.monomial.coeff),
            "power": result.monomial.power,
        })
    return json.dumps({"rows": json_rows}, indent=2)


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def format_simulate_text(result: SimResult) -> str:
    lines = []
    if result.config is not None:
        cfg = result.config
        lines.append(
            f"J[{cfg.word}] at t={format_decimal(cfg.horizon)}: "
            f"{cfg.paths} paths, {cfg.steps} steps, seed {cfg.seed}"
        )
    lines.append(f"mean      = {format_decimal(result.mean)}")
    lines.append(f"std_error = {format_decimal(result.std_error)}")
    if result.exact is not None:
        lines.append(f"exact     = {format_rational(result.exact)}")
    z = result.z
    if z is not None:
        lines.append(f"z         = {format_decimal(z)}")
    return "\n".join(lines)


def format_simulate_json(result: SimResult) -> str:
    output = {
        "config": result.config.to_json() if result.config is not None else None,
        "mean": result.mean,
        "std_error": result.std_error,
        "exact": format_rational(result.exact) if result.exact is not None else None,
        "z": result.z,
    }
    return json.dumps(output, indent=2)
