"""
Squared error-relevance curve and area
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np
from scipy.integrate import trapezoid

from ..models import PredictionBatch


EXACT = 'exact'
TRAPEZOID = 'trapezoid'
SCHEMES = (EXACT, TRAPEZOID)

DEFAULT_STEP = 1e-3


@dataclass(frozen=True)
class SerCurve:
    """SER at increasing relevance cuts"""
    knots: tuple[tuple[float, float], ...]

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return iter(self.knots)

    def __len__(self) -> int:
        return len(self.knots)

    @property
    def cuts(self) -> np.ndarray:
        return np.array([t for t, _ in self.knots], dtype=float)

    @property
    def values(self) -> np.ndarray:
        return np.array([s for _, s in self.knots], dtype=float)

    def to_list(self) -> list[tuple[float, float]]:
        return [(float(t), float(s)) for t, s in self.knots]


def _ser(squared: np.ndarray, phi: np.ndarray, cuts: np.ndarray) -> np.ndarray:
    """Sum of squared errors over rows with phi >= t, for every cut t"""
    order = np.argsort(phi, kind='stable')
    sorted_phi = phi[order]
    # Suffix sums: total error of rows from position i onward
    suffix = np.concatenate([np.cumsum(squared[order][::-1])[::-1], [0.0]])
    return suffix[np.searchsorted(sorted_phi, cuts, side='left')]


def _validate(batch: PredictionBatch, phi: Iterable[float]) -> np.ndarray:
    phi = np.asarray(phi, dtype=float).ravel()
    if phi.shape != batch.y_true.shape:
        raise ValueError(f"Need one relevance per pair: {phi.size} for {len(batch)} pairs")
    return phi


def ser_curve(batch: PredictionBatch, phi: Iterable[float],
              cuts: Optional[Sequence[float]] = None) -> SerCurve:
    """
    SER_t at each cut; by default at 0 and every distinct positive
    relevance value in the batch.
    """
    phi = _validate(batch, phi)
    if cuts is None:
        cuts = np.concatenate([[0.0], np.unique(phi[phi > 0])])
    cuts = np.asarray(cuts, dtype=float)
    values = _ser(batch.errors ** 2, phi, cuts)
    return SerCurve(tuple((float(t), float(s)) for t, s in zip(cuts, values)))


def sera(batch: PredictionBatch, phi: Iterable[float], scheme: str = EXACT,
         step: float = DEFAULT_STEP) -> float:
    """
    Area under the SER curve over t in [0, 1].

    'exact' integrates the step function between consecutive distinct
    relevance values; 'trapezoid' applies the trapezoidal rule on a
    uniform grid of the given step.
    """
    phi = _validate(batch, phi)
    squared = batch.errors ** 2

    if scheme == EXACT:
        knots = np.unique(phi[phi > 0])
        if knots.size == 0:
            return 0.0
        widths = np.diff(np.concatenate([[0.0], knots]))
        return float(np.sum(widths * _ser(squared, phi, knots)))

    if scheme == TRAPEZOID:
        if not 0 < step <= 1:
            raise ValueError(f"step must lie in (0, 1], got {step}")
        grid = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
        return float(trapezoid(_ser(squared, phi, grid), grid))

    raise ValueError(f"Unknown SERA scheme '{scheme}'. Supported: {', '.join(SCHEMES)}")
