"""
Data models for RareLens
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np
import pandas as pd

from .rng import RngStream
from .errors import ConfigError, DatasetError


DEFAULT_THRESHOLD = 0.8
DEFAULT_K = 5
DEFAULT_DELTA = 0.02

# Row id given to synthetic rows (replicas keep their source id)
SYNTHETIC_ROW_ID = -1


class AttributeKind(Enum):
    """Column kinds"""
    NUMERIC = "numeric"
    NOMINAL = "nominal"
    ORDINAL = "ordinal"


@dataclass(frozen=True)
class Attribute:
    """
    One predictor column.

    For nominal and ordinal attributes `categories` holds the category
    labels. Once encoded, nominal code i stands for categories[i] and
    ordinal code i + 1 stands for categories[i].
    """
    name: str
    kind: AttributeKind = AttributeKind.NUMERIC
    categories: tuple[str, ...] = ()
    encoded: bool = False

    @property
    def is_nominal(self) -> bool:
        return self.kind in (AttributeKind.NOMINAL, AttributeKind.ORDINAL)

    @property
    def code_offset(self) -> int:
        return 1 if self.kind == AttributeKind.ORDINAL else 0

    def code_map(self) -> dict[str, int]:
        return {cat: i + self.code_offset for i, cat in enumerate(self.categories)}


@dataclass(frozen=True)
class Schema:
    """Ordered attributes plus the name of the numeric target column"""
    attributes: tuple[Attribute, ...]
    target: str

    def __post_init__(self):
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise DatasetError(f"Duplicate attribute names: {names}")
        if self.target in names:
            raise DatasetError(f"Target '{self.target}' listed as an attribute")
        for attr in self.attributes:
            if attr.is_nominal and not attr.categories:
                raise DatasetError(f"Nominal attribute '{attr.name}' has no categories")

    @property
    def names(self) -> list[str]:
        return [a.name for a in self.attributes]

    @property
    def columns(self) -> list[str]:
        return self.names + [self.target]

    @property
    def p_total(self) -> int:
        return len(self.attributes)

    @property
    def p_nom(self) -> int:
        return sum(1 for a in self.attributes if a.is_nominal)

    @property
    def p_num(self) -> int:
        return self.p_total - self.p_nom

    @property
    def nominal_mask(self) -> np.ndarray:
        return np.array([a.is_nominal for a in self.attributes], dtype=bool)

    @property
    def is_encoded(self) -> bool:
        return all(a.encoded for a in self.attributes if a.is_nominal)

    def attribute(self, name: str) -> Attribute:
        for attr in self.attributes:
            if attr.name == name:
                return attr
        raise KeyError(name)

    def with_attributes(self, attributes: Iterable[Attribute]) -> 'Schema':
        return replace(self, attributes=tuple(attributes))


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Tabular dataset: a schema plus a pandas frame whose columns are the
    schema's attributes followed by the target.

    The frame index carries row ids (provenance): loaded rows are numbered
    0..N-1, replicas keep their source id and synthetic rows use
    SYNTHETIC_ROW_ID. Positional access always goes through iloc.
    """
    schema: Schema
    frame: pd.DataFrame

    def __post_init__(self):
        if list(self.frame.columns) != self.schema.columns:
            raise DatasetError(
                f"Frame columns {list(self.frame.columns)} do not match schema {self.schema.columns}"
            )
        if len(self.frame) < 1:
            raise DatasetError("Dataset must contain at least one row")

    def __len__(self) -> int:
        return len(self.frame)

    @property
    def n_rows(self) -> int:
        return len(self.frame)

    @property
    def targets(self) -> np.ndarray:
        return self.frame[self.schema.target].to_numpy(dtype=float)

    @property
    def row_ids(self) -> np.ndarray:
        return self.frame.index.to_numpy()

    def features(self) -> np.ndarray:
        """Attribute matrix as floats; nominal attributes must be encoded"""
        if not self.schema.is_encoded:
            raise DatasetError("Nominal attributes must be encoded before numeric access")
        if not self.schema.attributes:
            return np.zeros((len(self.frame), 0), dtype=float)
        return self.frame[self.schema.names].to_numpy(dtype=float)

    def take(self, positions: Sequence[int]) -> 'Dataset':
        """Rows at the given positions, ids preserved"""
        return Dataset(self.schema, self.frame.iloc[np.asarray(positions, dtype=int)])

    def with_frame(self, frame: pd.DataFrame) -> 'Dataset':
        return Dataset(self.schema, frame)

    @classmethod
    def from_arrays(cls, schema: Schema, features: np.ndarray, targets: np.ndarray,
                    row_ids: Optional[np.ndarray] = None) -> 'Dataset':
        """Dataset from an encoded feature matrix; ids default to SYNTHETIC_ROW_ID"""
        return cls(schema, _frame_block(schema, features, targets, row_ids))

    def append_rows(self, features: np.ndarray, targets: np.ndarray,
                    row_ids: Optional[np.ndarray] = None) -> 'Dataset':
        """Append encoded rows; ids default to SYNTHETIC_ROW_ID"""
        if len(targets) == 0:
            return self
        block = _frame_block(self.schema, features, targets, row_ids)
        frame = pd.concat([self.frame.astype(float), block], axis=0)
        return Dataset(self.schema, frame)


def _frame_block(schema: Schema, features: np.ndarray, targets: np.ndarray,
                 row_ids: Optional[np.ndarray]) -> pd.DataFrame:
    targets = np.asarray(targets, dtype=float)
    block = pd.DataFrame(np.asarray(features, dtype=float).reshape(len(targets), -1),
                         columns=schema.names)
    block[schema.target] = targets
    if row_ids is None:
        row_ids = np.full(len(targets), SYNTHETIC_ROW_ID)
    block.index = pd.Index(np.asarray(row_ids, dtype=np.int64))
    return block


@dataclass(frozen=True)
class DatasetProfile:
    """Dataset summary: size, attribute mix and rarity"""
    n: int
    p_total: int
    p_nom: int
    p_num: int
    n_rare: int
    ir: float
    pct_rare: float

    def to_dict(self) -> dict:
        return {
            "N": self.n,
            "p_total": self.p_total,
            "p_nom": self.p_nom,
            "p_num": self.p_num,
            "nRare": self.n_rare,
            "IR": self.ir,
            "pctRare": self.pct_rare,
        }


class Strategy(Enum):
    """Resampling strategy identifiers"""
    NONE = "none"
    SMT = "smt"
    RO = "ro"
    RU = "ru"
    GN = "gn"
    SG = "sg"
    WERCS = "wercs"

    @property
    def uses_neighbours(self) -> bool:
        return self in (Strategy.SMT, Strategy.SG)

    @property
    def uses_delta(self) -> bool:
        return self in (Strategy.GN, Strategy.SG)


class RateMode(Enum):
    """How per-bin under/over-sampling rates are resolved"""
    BALANCE = "balance"
    EXTREME = "extreme"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class ResampleSpec:
    """
    Strategy plus hyperparameters.

    u is the fraction of each normal bin kept, o the number of added rows
    per row of each rare bin. Both are only read in EXPLICIT mode; WERCS
    always uses them explicitly (fractions of |D|).
    """
    strategy: Strategy
    threshold: float = DEFAULT_THRESHOLD
    rate_mode: RateMode = RateMode.BALANCE
    u: Optional[float] = None
    o: Optional[float] = None
    k: int = DEFAULT_K
    delta: float = DEFAULT_DELTA
    rng: RngStream = field(default_factory=RngStream)

    def __post_init__(self):
        if not 0 < self.threshold <= 1:
            raise ConfigError(f"threshold must lie in (0, 1], got {self.threshold}")
        if self.strategy.uses_neighbours and self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.delta < 0 or not math.isfinite(self.delta):
            raise ConfigError(f"delta must be a finite value >= 0, got {self.delta}")
        for name in ('u', 'o'):
            value = getattr(self, name)
            if value is not None and (value < 0 or not math.isfinite(value)):
                raise ConfigError(f"{name} must be a finite value >= 0, got {value}")
        if self.strategy == Strategy.WERCS:
            for name in ('u', 'o'):
                value = getattr(self, name)
                if value is None or value > 1:
                    raise ConfigError(f"WERCS needs {name} in [0, 1], got {value}")
        elif self.rate_mode == RateMode.EXPLICIT:
            if self.strategy in (Strategy.RU, Strategy.SMT, Strategy.GN, Strategy.SG) and self.u is None:
                raise ConfigError(f"{self.strategy.value}: explicit mode needs u")
            if self.strategy in (Strategy.RO, Strategy.SMT, Strategy.GN, Strategy.SG) and self.o is None:
                raise ConfigError(f"{self.strategy.value}: explicit mode needs o")

    def with_rng(self, rng: RngStream) -> 'ResampleSpec':
        return replace(self, rng=rng)

    def params(self) -> dict:
        """Hyperparameters that matter for this strategy (JSON-ready)"""
        if self.strategy == Strategy.NONE:
            return {}
        if self.strategy == Strategy.WERCS:
            return {"u": self.u, "o": self.o}
        params: dict = {"threshold": self.threshold, "rates": self.rate_mode.value}
        if self.rate_mode == RateMode.EXPLICIT:
            params["u"] = self.u
            params["o"] = self.o
        if self.strategy.uses_neighbours:
            params["k"] = self.k
        if self.strategy.uses_delta:
            params["delta"] = self.delta
        return params


@dataclass(frozen=True, eq=False)
class PredictionBatch:
    """Aligned true and predicted target values"""
    y_true: np.ndarray
    y_pred: np.ndarray

    def __post_init__(self):
        y_true = np.asarray(self.y_true, dtype=float).ravel()
        y_pred = np.asarray(self.y_pred, dtype=float).ravel()
        if y_true.size == 0:
            raise ValueError("Prediction batch is empty")
        if y_true.shape != y_pred.shape:
            raise ValueError(f"Length mismatch: {y_true.size} true vs {y_pred.size} predicted")
        if not (np.all(np.isfinite(y_true)) and np.all(np.isfinite(y_pred))):
            raise ValueError("Prediction batch contains non-finite values")
        object.__setattr__(self, 'y_true', y_true)
        object.__setattr__(self, 'y_pred', y_pred)

    def __len__(self) -> int:
        return self.y_true.size

    @property
    def errors(self) -> np.ndarray:
        return self.y_pred - self.y_true


@dataclass
class EvalReport:
    """Metric values for one batch of predictions"""
    mse: float
    mae: float
    sera: float
    precision: Optional[float] = None
    recall: Optional[float] = None
    f1: Optional[float] = None
    ser_curve: Optional[list[tuple[float, float]]] = None
    undefined: list[str] = field(default_factory=list)

    def metrics(self) -> dict[str, Optional[float]]:
        return {
            "mse": self.mse,
            "mae": self.mae,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "sera": self.sera,
        }

    def to_dict(self) -> dict:
        data = self.metrics()
        if self.ser_curve is not None:
            data["ser_curve"] = [{"t": t, "ser": ser} for t, ser in self.ser_curve]
        if self.undefined:
            data["undefined"] = list(self.undefined)
        return data


@dataclass
class RunRecord:
    """Outcome of one (dataset, strategy, outer fold) benchmark run"""
    dataset: str
    strategy: str
    repeat: int
    fold: int
    params: dict = field(default_factory=dict)
    metrics: dict[str, Optional[float]] = field(default_factory=dict)
    train_size_before: int = 0
    train_size_after: int = 0
    wall_time: float = 0.0
    failure: Optional[str] = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failure is None

    @property
    def pct_change(self) -> Optional[float]:
        if not self.ok or self.train_size_before == 0:
            return None
        return 100.0 * (self.train_size_after - self.train_size_before) / self.train_size_before

    def to_dict(self, include_timing: bool = False) -> dict:
        data = {
            "dataset": self.dataset,
            "strategy": self.strategy,
            "repeat": self.repeat,
            "fold": self.fold,
            "params": self.params,
            "metrics": self.metrics,
            "train_size_before": self.train_size_before,
            "train_size_after": self.train_size_after,
            "failure": self.failure,
            "notes": self.notes,
        }
        if include_timing:
            data["wall_time"] = round(self.wall_time, 4)
        return data
