#!/usr/bin/env python3
"""
stratmoments CLI - expectations of iterated Stratonovich integrals

Usage:
    stratmoments expect --word 0,1,1,0,0            Closed-form E J_alpha(t)
    stratmoments expect --word 1,1 --t 2            ... evaluated at t
    stratmoments decompose --word 1,1,1             J_alpha in the Ito basis
    stratmoments table --max-len 4 --drivers 1     Every word with E J != 0
    stratmoments simulate --word 1,1 --paths 100000 Monte Carlo estimate

Every command accepts --format {text,json}, --config PATH and --verbose.

Exit codes: 0 success, 2 usage or parse error, 3 resource cap exceeded.
"""

import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .config import ResourceCapError, Settings, load_settings
from .convert import strat_to_ito
from .exact import parse_rational
from .expect import expect_strat, expect_strat_at, expectation_table
from .models import OutputFormat, SimConfig
from .montecarlo import estimate_expectation
from .render import (
    format_decompose_json,
    format_decompose_text,
    format_expect_json,
    format_expect_text,
    format_simulate_json,
    format_simulate_text,
    format_table_json,
    format_table_text,
)
from .words import parse_word

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3


def _error(message: str) -> None:
    print(f"Error: {message}", file=sys.stderr)


def _output_format(args) -> OutputFormat:
    return OutputFormat(getattr(args, "format", None) or OutputFormat.TEXT.value)


def _load_settings(args) -> Optional[Settings]:
    """Load settings from --config (or stratmoments.yaml), None on error."""
    try:
        settings = load_settings(getattr(args, "config", None))
    except (FileNotFoundError, ValueError) as e:
        _error(str(e))
        return None
    except Exception as e:  # malformed YAML
        _error(f"Could not read config: {e}")
        return None

    errors = settings.validate()
    if errors:
        print("Config validation errors:", file=sys.stderr)
        for error in errors:
            print(f"  - {error}", file=sys.stderr)
        return None
    return settings


def cmd_expect(args):
    """Print the closed-form expectation of J_word, optionally at a time t."""
    if _load_settings(args) is None:
        return EXIT_USAGE

    try:
        word = parse_word(args.word)
        t = parse_rational(args.t) if getattr(args, "t", None) is not None else None
        monomial = expect_strat(word).monomial
        value = expect_strat_at(word, t) if t is not None else None
    except ValueError as e:
        _error(str(e))
        return EXIT_USAGE

    if _output_format(args) == OutputFormat.JSON:
        print(format_expect_json(word, monomial, t, value))
    else:
        print(format_expect_text(monomial, t, value))
    return EXIT_OK


def cmd_decompose(args):
    """Print J_word as a combination of Ito integrals."""
    settings = _load_settings(args)
    if settings is None:
        return EXIT_USAGE

    try:
        word = parse_word(args.word)
    except ValueError as e:
        _error(str(e))
        return EXIT_USAGE

    try:
        combination = strat_to_ito(
            word,
            max_len=settings.limits.decomposition_max_len,
            max_terms=settings.limits.decomposition_max_terms,
        )
    except ResourceCapError as e:
        _error(str(e))
        return EXIT_CAP

    if _output_format(args) == OutputFormat.JSON:
        print(format_decompose_json(word, combination))
    else:
        print(format_decompose_text(combination))
    return EXIT_OK


def cmd_table(args):
    """Print every word with a nonzero expectation up to --max-len."""
    settings = _load_settings(args)
    if settings is None:
        return EXIT_USAGE

    try:
        rows = expectation_table(
            args.max_len,
            args.drivers,
            max_len_cap=settings.limits.enumeration_max_len,
        )
    except ResourceCapError as e:
        _error(str(e))
        return EXIT_CAP
    except ValueError as e:
        _error(str(e))
        return EXIT_USAGE

    if _output_format(args) == OutputFormat.JSON:
        print(format_table_json(rows))
    else:
        print(format_table_text(rows))
    return EXIT_OK


def cmd_simulate(args):
    """Estimate E J_word(t) by Monte Carlo and compare with the closed form."""
    settings = _load_settings(args)
    if settings is None:
        return EXIT_USAGE

    try:
        word = parse_word(args.word)
    except ValueError as e:
        _error(str(e))
        return EXIT_USAGE

    cfg = SimConfig(word=word, horizon=args.t, steps=args.steps, paths=args.paths, seed=args.seed)
    errors = cfg.validate()
    if errors:
        for error in errors:
            _error(error)
        return EXIT_USAGE

    threads = args.threads if getattr(args, "threads", None) is not None else settings.simulation.threads
    if threads < 0:
        _error(f"--threads must be >= 0, got {threads}")
        return EXIT_USAGE

    try:
        result = estimate_expectation(
            cfg,
            threads=threads,
            chunk_paths=settings.simulation.chunk_paths,
            budget=settings.simulation.budget,
        )
    except ResourceCapError as e:
        _error(str(e))
        return EXIT_CAP

    if _output_format(args) == OutputFormat.JSON:
        print(format_simulate_json(result))
    else:
        print(format_simulate_text(result))
    return EXIT_OK


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=[f.value for f in OutputFormat],
                        default=OutputFormat.TEXT.value, help="Output format (default: text)")
    parser.add_argument("--config", default=None,
                        help="Path to config file (default: ./stratmoments.yaml if present)")
    parser.add_argument("--verbose", "-v", action="store_true",
                        help="Log diagnostics to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stratmoments",
        description="Expectations of iterated Stratonovich integrals"
    )
    parser.add_argument(
        "--version", action="version",
        version=f"stratmoments {__version__}"
    )

    subparsers = parser.add_subparsers(dest="command", help="Commands")

    # expect
    expect_parser = subparsers.add_parser("expect", help="Closed-form expectation of J_word")
    expect_parser.add_argument("--word", required=True,
                               help="Comma-separated multi-index, e.g. 0,1,1,0,0")
    expect_parser.add_argument("--t", default=None,
                               help="Evaluate at this time (rational, e.g. 1/2 or 0.25)")
    _add_common_arguments(expect_parser)

    # decompose
    decompose_parser = subparsers.add_parser("decompose", help="J_word in the Ito basis")
    decompose_parser.add_argument("--word", required=True,
                                  help="Comma-separated multi-index, e.g. 1,1,1")
    _add_common_arguments(decompose_parser)

    # table
    table_parser = subparsers.add_parser("table", help="Words with nonzero expectation")
    table_parser.add_argument("--max-len", type=int, required=True,
                              help="Longest word to list")
    table_parser.add_argument("--drivers", type=int, default=1,
                              help="Number of Wiener drivers (default: 1)")
    _add_common_arguments(table_parser)

    # simulate
    simulate_parser = subparsers.add_parser("simulate", help="Monte Carlo estimate of E J_word(t)")
    simulate_parser.add_argument("--word", required=True,
                                 help="Comma-separated multi-index, e.g. 1,1")
    simulate_parser.add_argument("--t", type=float, default=1.0,
                                 help="Horizon (default: 1)")
    simulate_parser.add_argument("--paths", type=int, default=10_000,
                                 help="Number of simulated paths (default: 10000)")
    simulate_parser.add_argument("--steps", type=int, default=256,
                                 help="Grid cells per path (default: 256)")
    simulate_parser.add_argument("--seed", type=int, default=0,
                                 help="Random seed, unsigned 64-bit (default: 0)")
    simulate_parser.add_argument("--threads", type=int, default=None,
                                 help="Worker threads, 0 = one per CPU (never changes results)")
    _add_common_arguments(simulate_parser)

    return parser


def main(argv: Optional[List[str]] = None):
    """Entry point for stratmoments CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    if getattr(args, "verbose", False):
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr,
                            format="%(name)s: %(message)s")

    if args.command == "expect":
        return cmd_expect(args)
    elif args.command == "decompose":
        return cmd_decompose(args)
    elif args.command == "table":
        return cmd_table(args)
    elif args.command == "simulate":
        return cmd_simulate(args)

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
