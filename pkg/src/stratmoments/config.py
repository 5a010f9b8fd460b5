"""
Configuration - Load and validate stratmoments.yaml files.

Config format:
```yaml
version: "1"
limits:
  enumeration_max_len: 20
  decomposition_max_len: 16
  decomposition_max_terms: 1048576
simulation:
  budget: 2000000000
  chunk_paths: 4096
  threads: 0
```

Every key is optional; missing keys keep their defaults and unknown keys
are ignored.
"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

import yaml


DEFAULT_CONFIG_FILE = "stratmoments.yaml"

DEFAULT_ENUMERATION_MAX_LEN = 20
DEFAULT_DECOMPOSITION_MAX_LEN = 16
DEFAULT_DECOMPOSITION_MAX_TERMS = 2 ** 20
DEFAULT_SIMULATION_BUDGET = 2_000_000_000
DEFAULT_CHUNK_PATHS = 4096


class ResourceCapError(Exception):
    """Raised when a request exceeds a configured size limit."""


@dataclass
class Limits:
    """Caps on the exact (symbolic) operations."""

    enumeration_max_len: int = DEFAULT_ENUMERATION_MAX_LEN
    decomposition_max_len: int = DEFAULT_DECOMPOSITION_MAX_LEN
    decomposition_max_terms: int = DEFAULT_DECOMPOSITION_MAX_TERMS


@dataclass
class SimulationSettings:
    """Monte Carlo resource settings."""

    budget: int = DEFAULT_SIMULATION_BUDGET   # max paths * steps * |word|
    chunk_paths: int = DEFAULT_CHUNK_PATHS    # paths per worker batch
    threads: int = 0                          # 0 = auto (cpu_count)

    def effective_threads(self, requested: Optional[int] = None) -> int:
        """Resolve a thread setting to an actual worker count."""
        return resolve_threads(self.threads if requested is None else requested)


def resolve_threads(threads: int) -> int:
    """0 means one worker per CPU."""
    if threads == 0:
        return os.cpu_count() or 1
    return max(1, threads)


@dataclass
class Settings:
    """All stratmoments settings."""

    version: str = "1"
    limits: Limits = field(default_factory=Limits)
    simulation: SimulationSettings = field(default_factory=SimulationSettings)

    def validate(self) -> List[str]:
        """Return list of validation errors (empty if valid)."""
        errors: List[str] = []
        for name in ("enumeration_max_len", "decomposition_max_len", "decomposition_max_terms"):
            value = getattr(self.limits, name)
            if not isinstance(value, int) or value < 0:
                errors.append(f"limits.{name} must be a nonnegative integer, got {value!r}")
        sim = self.simulation
        if not isinstance(sim.budget, int) or sim.budget < 1:
            errors.append(f"simulation.budget must be >= 1, got {sim.budget!r}")
        if not isinstance(sim.chunk_paths, int) or sim.chunk_paths < 1:
            errors.append(f"simulation.chunk_paths must be >= 1, got {sim.chunk_paths!r}")
        if not isinstance(sim.threads, int) or sim.threads < 0:
            errors.append(f"simulation.threads must be >= 0, got {sim.threads!r}")
        return errors


def parse_settings(data: Optional[dict]) -> Settings:
    """
    Parse config data into a Settings object.

    Args:
        data: Parsed YAML data (None for an empty file)

    Returns:
        Settings object
    """
    settings = Settings()
    if not data:
        return settings

    settings.version = str(data.get("version", settings.version))

    limits_data = data.get("limits") or {}
    for name in ("enumeration_max_len", "decomposition_max_len", "decomposition_max_terms"):
        if name in limits_data:
            setattr(settings.limits, name, limits_data[name])

    sim_data = data.get("simulation") or {}
    for name in ("budget", "chunk_paths", "threads"):
        if name in sim_data:
            setattr(settings.simulation, name, sim_data[name])

    return settings


def load_settings(path: Union[str, Path, None] = None) -> Settings:
    """
    Load settings from YAML file.

    Args:
        path: Path to config file. If None, looks for stratmoments.yaml in
            the working directory and falls back to defaults when absent.

    Returns:
        Settings object
    """
    if path is None:
        path = Path.cwd() / DEFAULT_CONFIG_FILE
        if not path.exists():
            return Settings()
    else:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {path}")

    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)

    if data is not None and not isinstance(data, dict):
        raise ValueError(f"Config file must contain a mapping: {path}")

    return parse_settings(data)
