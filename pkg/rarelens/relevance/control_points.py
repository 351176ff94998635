"""
Relevance control points: validation, boxplot heuristic and file loading
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Union

import numpy as np
import pandas as pd

from ..errors import ControlPointError, DegenerateDistributionError


# Whisker coefficient of Tukey's boxplot
BOXPLOT_COEF = 1.5

# Fewer distinct targets than this cannot support a boxplot relevance
MIN_DISTINCT_TARGETS = 5


@dataclass(frozen=True)
class ControlPoint:
    """Anchor (y, relevance, derivative) of the interpolated relevance function"""
    y: float
    rel: float
    deriv: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.y, self.rel, self.deriv)):
            raise ControlPointError(f"Control point values must be finite: {self}")
        if not 0.0 <= self.rel <= 1.0:
            raise ControlPointError(f"Relevance {self.rel} at y={self.y} outside [0, 1]")

    def to_dict(self) -> dict:
        return {"y": self.y, "rel": self.rel, "deriv": self.deriv}


@dataclass(frozen=True)
class ControlPointSet:
    """At least two control points, strictly ascending in y"""
    points: tuple[ControlPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(self.points))
        if len(self.points) < 2:
            raise ControlPointError(f"Need at least 2 control points, got {len(self.points)}")
        ys = [p.y for p in self.points]
        if any(b <= a for a, b in zip(ys, ys[1:])):
            raise ControlPointError(f"Control points must be strictly ascending in y: {ys}")

    @classmethod
    def from_triples(cls, rows: Iterable[Iterable[float]]) -> 'ControlPointSet':
        """Build from (y, rel[, deriv]) tuples"""
        return cls(tuple(ControlPoint(*map(float, row)) for row in rows))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[ControlPoint]:
        return iter(self.points)

    @property
    def ys(self) -> np.ndarray:
        return np.array([p.y for p in self.points], dtype=float)

    @property
    def rels(self) -> np.ndarray:
        return np.array([p.rel for p in self.points], dtype=float)

    @property
    def derivs(self) -> np.ndarray:
        return np.array([p.deriv for p in self.points], dtype=float)

    def to_list(self) -> list[dict]:
        return [p.to_dict() for p in self.points]


def control_points_boxplot(targets: Iterable[float],
                           coef: float = BOXPLOT_COEF) -> ControlPointSet:
    """
    Automatic control points from Tukey's boxplot.

    The adjacent limits Q1 - coef*IQR and Q3 + coef*IQR get relevance 1,
    the median gets relevance 0, all with derivative 0. Quartiles use
    linear interpolation between order statistics. The adjacent limits
    are kept even when they fall outside the observed range.

    Raises:
        DegenerateDistributionError: zero IQR, fewer than five distinct
            values, or a median sitting on an adjacent limit
    """
    y = np.asarray(list(targets), dtype=float)

    if y.size == 0 or not np.all(np.isfinite(y)):
        raise DegenerateDistributionError("Targets must be a non-empty list of finite values")

    n_distinct = np.unique(y).size
    if n_distinct < MIN_DISTINCT_TARGETS:
        raise DegenerateDistributionError(
            f"Need at least {MIN_DISTINCT_TARGETS} distinct target values, got {n_distinct}"
        )

    q1, median, q3 = np.quantile(y, [0.25, 0.5, 0.75], method='linear')
    iqr = q3 - q1
    if iqr <= 0:
        raise DegenerateDistributionError("Interquartile range is zero")

    adj_low = q1 - coef * iqr
    adj_high = q3 + coef * iqr
    if not adj_low < median < adj_high:
        raise DegenerateDistributionError("Median coincides with an adjacent limit")

    return ControlPointSet((
        ControlPoint(float(adj_low), 1.0, 0.0),
        ControlPoint(float(median), 0.0, 0.0),
        ControlPoint(float(adj_high), 1.0, 0.0),
    ))


def load_control_points(path: Union[str, Path]) -> ControlPointSet:
    """
    Read domain-knowledge control points from a CSV with columns
    y, rel and optionally deriv (defaults to 0).
    """
    path = Path(path)
    if not path.exists():
        raise ControlPointError(f"Control point file not found: {path}")

    try:
        frame = pd.read_csv(path)
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise ControlPointError(f"Cannot parse control points from {path}: {e}")

    frame.columns = [str(c).strip().lower() for c in frame.columns]
    missing = {'y', 'rel'} - set(frame.columns)
    if missing:
        raise ControlPointError(f"Control point file {path} lacks columns {sorted(missing)}")
    if 'deriv' not in frame.columns:
        frame['deriv'] = 0.0

    try:
        values = frame[['y', 'rel', 'deriv']].to_numpy(dtype=float)
    except ValueError as e:
        raise ControlPointError(f"Non-numeric control point in {path}: {e}")

    return ControlPointSet.from_triples(values.tolist())
