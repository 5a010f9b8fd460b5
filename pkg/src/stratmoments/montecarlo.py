"""
Monte Carlo oracle for E J_alpha.

Wiener paths are simulated on a uniform grid and the iterated Stratonovich
integral is accumulated with the midpoint (trapezoidal) rule over the whole
prefix hierarchy J_(a1), J_(a1,a2), ..., J_alpha. Nothing here uses the
closed form or the Ito decomposition, so agreement is a real cross-check.

Random numbers: driver ``m`` of path ``i`` under seed ``s`` draws from numpy's
counter-based Philox generator keyed by ``SeedSequence([s, m])`` with counter
``i * 2**128``. Only the drivers a word uses are drawn, each from its own
stream, so results do not depend on chunking, thread count, the order in
which chunks finish, or which other drivers the word contains.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .config import (
    DEFAULT_CHUNK_PATHS,
    DEFAULT_SIMULATION_BUDGET,
    ResourceCapError,
    resolve_threads,
)
from .expect import expect_strat_at
from .models import SimConfig, SimResult, Word

logger = logging.getLogger(__name__)

_PATH_COUNTER_STRIDE = 1 << 128


class SimConfigError(ValueError):
    """Raised for an invalid SimConfig."""


class MissingIncrementsError(ValueError):
    """Raised when a Wiener letter has no (or badly shaped) increments."""


class SimulationBudgetError(ResourceCapError):
    """Raised when paths * steps * |word| exceeds the simulation budget."""


def check_config(cfg: SimConfig) -> None:
    errors = cfg.validate()
    if errors:
        raise SimConfigError("; ".join(errors))


def _wiener_letters(word: Word) -> List[int]:
    return sorted({letter for letter in word if letter != 0})


def driver_key(seed: int, letter: int) -> np.ndarray:
    """128-bit Philox key of driver ``letter`` under ``seed``."""
    return np.random.SeedSequence([seed, letter]).generate_state(2, dtype=np.uint64)


def path_increments(
    seed: int,
    path_index: int,
    letters: Sequence[int],
    steps: int,
    horizon: float,
) -> np.ndarray:
    """
    Wiener increments of one path, shape (len(letters), steps).

    Row j holds the increments of driver letters[j], each N(0, horizon/steps).
    A (seed, path_index, letter) triple always yields the same row, whatever
    other drivers are requested alongside it.
    """
    scale = math.sqrt(horizon / steps)
    rows = np.empty((len(letters), steps))
    for j, letter in enumerate(letters):
        bit_generator = np.random.Philox(
            key=driver_key(seed, letter), counter=path_index * _PATH_COUNTER_STRIDE
        )
        rows[j] = np.random.Generator(bit_generator).standard_normal(steps) * scale
    return rows


def coarsen_increments(increments: np.ndarray, factor: int) -> np.ndarray:
    """Sum blocks of ``factor`` consecutive increments along the last axis."""
    steps = increments.shape[-1]
    if factor < 1 or steps % factor:
        raise ValueError(f"Cannot coarsen {steps} steps by a factor of {factor}")
    shape = increments.shape[:-1] + (steps // factor, factor)
    return increments.reshape(shape).sum(axis=-1)


def integrate_paths(
    word: Word,
    horizon: float,
    steps: int,
    increments: Mapping[int, np.ndarray],
    paths: Optional[int] = None,
) -> np.ndarray:
    """
    J_word(horizon) along many paths at once.

    Args:
        word: Multi-index to integrate
        horizon: End time t
        steps: Number of grid cells, dt = horizon / steps
        increments: driver -> array (paths, steps) for every Wiener letter
        paths: Path count, needed only when the word has no Wiener letter

    Returns:
        Array of shape (paths,)
    """
    letters = word.letters
    arrays: Dict[int, np.ndarray] = {}
    for letter in _wiener_letters(word):
        if letter not in increments:
            raise MissingIncrementsError(f"No increments supplied for driver {letter}")
        array = np.asarray(increments[letter], dtype=np.float64)
        if array.ndim == 1:
            array = array.reshape(1, -1)
        if array.shape[-1] != steps:
            raise MissingIncrementsError(
                f"Driver {letter} has {array.shape[-1]} increments, expected {steps}"
            )
        arrays[letter] = array

    if paths is None:
        paths = next(iter(arrays.values())).shape[0] if arrays else 1
    for letter, array in arrays.items():
        if array.shape[0] != paths:
            raise MissingIncrementsError(
                f"Driver {letter} has {array.shape[0]} paths, expected {paths}"
            )

    dt = horizon / steps
    # values[k] is the running J of the length-k prefix; the empty prefix is 1.
    values = np.zeros((len(letters) + 1, paths))
    values[0] = 1.0
    for k in range(steps):
        start = values.copy()
        for j, letter in enumerate(letters, start=1):
            dw = dt if letter == 0 else arrays[letter][:, k]
            values[j] += 0.5 * (start[j - 1] + values[j - 1]) * dw
    return values[-1].copy()


def simulate_path_integrals(
    word: Word,
    horizon: float,
    steps: int,
    increments: Mapping[int, Sequence[float]],
) -> float:
    """J_word(horizon) along a single path given its Wiener increments."""
    arrays = {
        letter: np.asarray(values, dtype=np.float64).reshape(1, -1)
        for letter, values in increments.items()
    }
    return float(integrate_paths(word, horizon, steps, arrays, paths=1)[0])


def _simulate_chunk(cfg: SimConfig, first: int, last: int) -> np.ndarray:
    letters = _wiener_letters(cfg.word)
    count = last - first
    if not letters:
        return integrate_paths(cfg.word, cfg.horizon, cfg.steps, {}, paths=count)

    draws = np.empty((len(letters), count, cfg.steps))
    for i, path_index in enumerate(range(first, last)):
        draws[:, i, :] = path_increments(cfg.seed, path_index, letters, cfg.steps, cfg.horizon)
    increments = {m: draws[j] for j, m in enumerate(letters)}
    return integrate_paths(cfg.word, cfg.horizon, cfg.steps, increments, paths=count)


def _chunks(paths: int, chunk_paths: int) -> List[Tuple[int, int]]:
    return [(first, min(first + chunk_paths, paths)) for first in range(0, paths, chunk_paths)]


def sample_path_values(
    cfg: SimConfig,
    *,
    threads: int = 0,
    chunk_paths: int = DEFAULT_CHUNK_PATHS,
) -> np.ndarray:
    """
    J_word(horizon) for every path, in path order.

    Chunks run on a thread pool (0 = one worker per CPU); numpy releases the
    GIL inside the array updates.
    """
    check_config(cfg)
    if chunk_paths < 1:
        raise SimConfigError(f"chunk_paths must be >= 1, got {chunk_paths}")

    chunks = _chunks(cfg.paths, chunk_paths)
    workers = min(resolve_threads(threads), len(chunks))
    logger.debug(
        "Simulating J[%s]: %d paths in %d chunks on %d workers",
        cfg.word, cfg.paths, len(chunks), workers,
    )

    if workers <= 1:
        parts = [_simulate_chunk(cfg, first, last) for first, last in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            # map() returns results in submission order
            parts = list(executor.map(lambda span: _simulate_chunk(cfg, *span), chunks))

    return np.concatenate(parts)


def estimate_expectation(
    cfg: SimConfig,
    *,
    threads: int = 0,
    chunk_paths: int = DEFAULT_CHUNK_PATHS,
    budget: int = DEFAULT_SIMULATION_BUDGET,
) -> SimResult:
    """
    Monte Carlo estimate of E J_word(horizon) with its standard error.

    Sums go through math.fsum, which is exactly rounded, so the reported
    bits are the same for any thread count or chunk size.

    Args:
        cfg: Simulation parameters
        threads: Worker threads (0 = one per CPU)
        chunk_paths: Paths per worker batch
        budget: Largest accepted paths * steps * |word|

    Returns:
        SimResult with the exact closed-form value attached
    """
    check_config(cfg)
    if cfg.work > budget:
        raise SimulationBudgetError(
            f"Simulation needs {cfg.work} path-steps, more than the budget of {budget}"
        )

    values = sample_path_values(cfg, threads=threads, chunk_paths=chunk_paths)
    n = len(values)
    mean = math.fsum(values) / n
    if n > 1:
        variance = math.fsum((values - mean) ** 2) / (n - 1)
        std_error = math.sqrt(variance) / math.sqrt(n)
    else:
        std_error = 0.0

    exact = expect_strat_at(cfg.word, Fraction(repr(float(cfg.horizon))))
    return SimResult(mean=mean, std_error=std_error, paths=n, exact=exact, config=cfg)
