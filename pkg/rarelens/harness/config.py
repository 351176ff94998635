"""
Benchmark configuration
"""

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from ..errors import ConfigError
from ..metrics.utility import DEFAULT_BETA, DEFAULT_P
from ..models import DEFAULT_THRESHOLD, RateMode, ResampleSpec, Strategy
from ..rng import DEFAULT_SEED


DEFAULT_FOLDS = 10
DEFAULT_REPEATS = 2
DEFAULT_INNER_FOLDS = 2
DEFAULT_KNN_K = 5
DEFAULT_TIMEOUT = 600  # seconds per run

# Hyperparameter grids searched by nested cross-validation
RATE_GRID = ('balance', 'extreme')
K_GRID = (3, 5, 7)
DELTA_GRID = tuple(round(0.05 * i, 2) for i in range(21))
WERCS_GRID = (0.3, 0.5, 0.7, 0.9)

DEFAULT_GRIDS: dict[Strategy, dict[str, tuple]] = {
    Strategy.NONE: {},
    Strategy.SMT: {'rates': RATE_GRID, 'k': K_GRID},
    Strategy.RO: {'rates': RATE_GRID},
    Strategy.RU: {'rates': RATE_GRID},
    Strategy.GN: {'rates': RATE_GRID, 'delta': DELTA_GRID},
    Strategy.SG: {'rates': RATE_GRID, 'k': K_GRID, 'delta': DELTA_GRID},
    Strategy.WERCS: {'u': WERCS_GRID, 'o': WERCS_GRID},
}

GRID_KEYS = ('rates', 'u', 'o', 'k', 'delta')


@dataclass
class DatasetEntry:
    """One benchmark dataset"""
    path: Path
    target: str
    name: str = ""
    hints: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.path = Path(self.path)
        if not self.name:
            self.name = self.path.stem


@dataclass(frozen=True)
class StrategyGrid:
    """A strategy and the hyperparameter points nested selection chooses from"""
    strategy: Strategy
    points: tuple[ResampleSpec, ...]

    def __post_init__(self):
        if not self.points:
            raise ConfigError(f"Empty hyperparameter grid for '{self.strategy.value}'")


@dataclass
class ExperimentConfig:
    """Benchmark protocol: datasets, strategy grids and cross-validation layout"""
    datasets: list[DatasetEntry]
    strategies: list[StrategyGrid]
    folds: int = DEFAULT_FOLDS
    repeats: int = DEFAULT_REPEATS
    inner_folds: int = DEFAULT_INNER_FOLDS
    threshold: float = DEFAULT_THRESHOLD
    seed: int = DEFAULT_SEED
    knn_k: int = DEFAULT_KNN_K
    timeout: float = DEFAULT_TIMEOUT
    workers: int = 1
    p: float = DEFAULT_P
    beta: float = DEFAULT_BETA

    def __post_init__(self):
        if not self.datasets:
            raise ConfigError("No datasets configured")
        if not self.strategies:
            raise ConfigError("No strategies configured")
        names = [d.name for d in self.datasets]
        if len(set(names)) != len(names):
            raise ConfigError(f"Duplicate dataset names: {names}")
        if self.folds < 2 or self.inner_folds < 2:
            raise ConfigError("folds and inner_folds must be >= 2")
        if self.repeats < 1:
            raise ConfigError("repeats must be >= 1")
        if self.knn_k < 1:
            raise ConfigError("knn_k must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if not self.timeout > 0:
            raise ConfigError("timeout must be > 0")
        if not 0 < self.threshold <= 1:
            raise ConfigError(f"threshold must lie in (0, 1], got {self.threshold}")
        if not 0 <= self.p <= 1 or not self.beta > 0:
            raise ConfigError("p must lie in [0, 1] and beta must be > 0")

    @property
    def n_runs(self) -> int:
        return len(self.datasets) * len(self.strategies) * self.folds * self.repeats


def expand_grid(strategy: Strategy, grid: Optional[dict] = None,
                threshold: float = DEFAULT_THRESHOLD) -> StrategyGrid:
    """
    Cartesian product of a grid object into ResampleSpecs.

    Keys are taken from GRID_KEYS; each maps to a list of values (a scalar
    is a one-point list). 'rates' values are 'balance', 'extreme' or
    'explicit'; supplying u or o without 'rates' selects explicit rates.
    A None grid means the built-in grid of the strategy.
    """
    if grid is None:
        grid = DEFAULT_GRIDS[strategy]
    if not isinstance(grid, dict):
        raise ConfigError(f"Grid for '{strategy.value}' must be an object")

    unknown = set(grid) - set(GRID_KEYS)
    if unknown:
        raise ConfigError(f"Unknown grid keys for '{strategy.value}': {sorted(unknown)}")

    if strategy == Strategy.NONE:
        return StrategyGrid(strategy, (ResampleSpec(strategy, threshold=threshold),))

    axes = {key: _as_list(key, grid[key]) for key in GRID_KEYS if key in grid}
    if strategy != Strategy.WERCS and 'rates' not in axes and ('u' in axes or 'o' in axes):
        axes = {'rates': ['explicit'], **axes}

    points = []
    for values in itertools.product(*axes.values()):
        params = dict(zip(axes.keys(), values))
        try:
            rates = RateMode(params.pop('rates', 'balance'))
            points.append(ResampleSpec(strategy, threshold=threshold, rate_mode=rates, **params))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid grid point {params} for '{strategy.value}': {e}")

    return StrategyGrid(strategy, tuple(points))


def _as_list(key: str, value) -> list:
    values = list(value) if isinstance(value, (list, tuple)) else [value]
    if not values:
        raise ConfigError(f"Grid axis '{key}' is empty")
    if key == 'k':
        return [int(v) for v in values]
    if key in ('u', 'o', 'delta'):
        values = [float(v) for v in values]
        if not all(math.isfinite(v) for v in values):
            raise ConfigError(f"Grid axis '{key}' has non-finite values")
    return values


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Parse a benchmark JSON file.

    Relative dataset paths resolve against the config file's directory.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError:
        raise ConfigError(f"Config file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in {path}: {e}")

    if not isinstance(raw, dict):
        raise ConfigError("Config must be a JSON object")

    threshold = float(raw.get('threshold', DEFAULT_THRESHOLD))

    datasets = []
    for entry in raw.get('datasets', []):
        try:
            data_path = Path(entry['path'])
            target = entry['target']
        except (KeyError, TypeError):
            raise ConfigError(f"Dataset entries need 'path' and 'target': {entry}")
        if not data_path.is_absolute():
            data_path = path.parent / data_path
        datasets.append(DatasetEntry(data_path, target, entry.get('name', ''),
                                     entry.get('hints', {})))

    strategies = []
    for strategy_id, grid in (raw.get('strategies') or {}).items():
        try:
            strategy = Strategy(strategy_id)
        except ValueError:
            raise ConfigError(
                f"Unknown strategy '{strategy_id}'. Supported: {', '.join(s.value for s in Strategy)}"
            )
        strategies.append(expand_grid(strategy, grid, threshold))

    options = {key: raw[key] for key in ('folds', 'repeats', 'inner_folds', 'seed', 'knn_k',
                                         'timeout', 'workers', 'p', 'beta') if key in raw}
    try:
        return ExperimentConfig(datasets=datasets, strategies=strategies,
                                threshold=threshold, **options)
    except TypeError as e:
        raise ConfigError(f"Invalid config: {e}")
