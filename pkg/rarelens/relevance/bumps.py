"""
Bump partition of a relevance function

Bumps split the real line at the relevance minima between consecutive
maxima. The relevance function is constant beyond its outer knots: an
outer plateau that is a minimum bounds the outermost bump at its inner
end, while an outer plateau that is a maximum leaves that bump unbounded.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .pchip import RelevanceFunction


log = logging.getLogger(__name__)

# Fallback scan step, as a fraction of the knot range
GRID_RESOLUTION = 1e-4

# Relevance values closer than this are treated as one plateau
PLATEAU_TOL = 1e-12


@dataclass(frozen=True)
class Bump:
    """
    One bump: lower boundary, maximum point, upper boundary and the
    maximum admissible loss 2 * min(|lower - peak|, |peak - upper|).
    """
    lower: float
    peak: float
    upper: float
    max_loss: float

    def to_dict(self) -> dict:
        return {
            "lower": _finite_or_str(self.lower),
            "peak": self.peak,
            "upper": _finite_or_str(self.upper),
            "max_loss": _finite_or_str(self.max_loss),
        }


@dataclass(frozen=True, eq=False)
class BumpPartition:
    """
    Bumps in ascending order. Values beyond an outer boundary still belong
    to the outermost bump on that side.
    """
    bumps: tuple[Bump, ...]

    def __post_init__(self):
        object.__setattr__(self, 'bumps', tuple(self.bumps))
        # Interior boundaries, for vectorised lookup
        object.__setattr__(self, '_cuts', np.array([b.upper for b in self.bumps[:-1]], dtype=float))

    def __len__(self) -> int:
        return len(self.bumps)

    def __iter__(self) -> Iterator[Bump]:
        return iter(self.bumps)

    def __getitem__(self, index: int) -> Bump:
        return self.bumps[index]

    @property
    def lowers(self) -> np.ndarray:
        """b- boundaries, one per bump plus the final upper boundary"""
        return np.array([b.lower for b in self.bumps] + [self.bumps[-1].upper], dtype=float)

    @property
    def peaks(self) -> np.ndarray:
        return np.array([b.peak for b in self.bumps], dtype=float)

    @property
    def max_losses(self) -> np.ndarray:
        return np.array([b.max_loss for b in self.bumps], dtype=float)

    def locate(self, y: Union[float, np.ndarray]):
        """Index of the bump containing y; a shared boundary belongs to the upper bump"""
        index = np.searchsorted(self._cuts, np.asarray(y, dtype=float), side='right')
        return int(index) if np.ndim(index) == 0 else index

    def to_list(self) -> list[dict]:
        return [b.to_dict() for b in self.bumps]


def bump_partition(relevance: RelevanceFunction, method: str = 'analytic') -> BumpPartition:
    """
    Locate relevance maxima and the minima separating them.

    Args:
        relevance: Fitted relevance function
        method: 'analytic' solves each segment's derivative for its roots
            (falling back to a grid scan on failure); 'grid' scans the
            knot range at GRID_RESOLUTION

    Returns:
        BumpPartition; a constant function yields one bump with
        unbounded maximum loss
    """
    if method == 'analytic':
        xs = _analytic_candidates(relevance)
    elif method == 'grid':
        xs = _grid_candidates(relevance)
    else:
        raise ValueError(f"Unknown bump method: {method}")

    plateaus = _plateaus(xs, relevance(xs))

    if len(plateaus) == 1:
        lo, hi = relevance.domain
        peak = (lo + hi) / 2
        return BumpPartition((Bump(-math.inf, peak, math.inf, math.inf),))

    maxima, minima = _extrema(plateaus)

    # Outer minima bound the edge bumps; outer maxima leave them open
    boundaries = [_midpoint(plateaus[0]) if plateaus[0] in minima else -math.inf]
    for left, right in zip(maxima, maxima[1:]):
        between = [m for m in minima if left[1] <= m[0] and m[1] <= right[0]]
        boundaries.append(_midpoint(between[0]))
    boundaries.append(_midpoint(plateaus[-1]) if plateaus[-1] in minima else math.inf)

    bumps = []
    for i, plateau in enumerate(maxima):
        peak = _midpoint(plateau)
        lower, upper = boundaries[i], boundaries[i + 1]
        max_loss = 2 * min(abs(lower - peak), abs(peak - upper))
        bumps.append(Bump(lower, peak, upper, max_loss))

    log.debug("Bump partition: %d bumps, peaks at %s", len(bumps), [b.peak for b in bumps])
    return BumpPartition(tuple(bumps))


def _analytic_candidates(relevance: RelevanceFunction) -> np.ndarray:
    """Knots plus interior stationary points of every segment"""
    points = list(relevance.knots)

    for k, (a, b, c, d) in enumerate(relevance.coefficients):
        lo, hi = relevance.knots[k], relevance.knots[k + 1]
        try:
            roots = _derivative_roots(b, c, d)
        except (ArithmeticError, np.linalg.LinAlgError):
            log.debug("Segment [%g, %g]: analytic roots failed, scanning", lo, hi)
            points.extend(_scan(relevance, lo, hi))
            continue
        points.extend(lo + t for t in roots if 0 < t < hi - lo)

    return np.unique(np.array(points, dtype=float))


def _derivative_roots(b: float, c: float, d: float) -> list[float]:
    """Real roots of b + 2c t + 3d t^2 (none when the derivative vanishes)"""
    if not all(math.isfinite(v) for v in (b, c, d)):
        raise ArithmeticError("non-finite segment coefficients")

    qa, qb, qc = 3 * d, 2 * c, b
    if qa == 0:
        return [] if qb == 0 else [-qc / qb]

    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return []
    root = math.sqrt(disc)
    return sorted({(-qb - root) / (2 * qa), (-qb + root) / (2 * qa)})


def _grid_candidates(relevance: RelevanceFunction) -> np.ndarray:
    lo, hi = relevance.domain
    return np.unique(np.concatenate([relevance.knots, _scan(relevance, lo, hi)]))


def _scan(relevance: RelevanceFunction, lo: float, hi: float) -> np.ndarray:
    lo_all, hi_all = relevance.domain
    step = GRID_RESOLUTION * (hi_all - lo_all)
    n = max(int(math.ceil((hi - lo) / step)), 1) + 1
    return np.linspace(lo, hi, n)


def _plateaus(xs: np.ndarray, values: np.ndarray) -> list[tuple[float, float, float]]:
    """
    Merge runs of equal relevance into (start, end, value) plateaus; the
    first and last plateaus extend to -inf and +inf.
    """
    plateaus = []
    start = 0
    for i in range(1, len(xs) + 1):
        if i == len(xs) or abs(values[i] - values[start]) > PLATEAU_TOL:
            plateaus.append([float(xs[start]), float(xs[i - 1]), float(values[start])])
            start = i

    plateaus[0][0] = -math.inf
    plateaus[-1][1] = math.inf
    return [tuple(p) for p in plateaus]


def _extrema(plateaus):
    """Split plateaus into local maxima and minima, dropping pass-through ones"""
    maxima, minima = [], []
    for i, plateau in enumerate(plateaus):
        neighbours = [plateaus[j][2] for j in (i - 1, i + 1) if 0 <= j < len(plateaus)]
        if all(plateau[2] > v for v in neighbours):
            maxima.append(plateau)
        elif all(plateau[2] < v for v in neighbours):
            minima.append(plateau)
    return maxima, minima


def _midpoint(plateau) -> float:
    start, end = plateau[0], plateau[1]
    if math.isinf(start):
        return end
    if math.isinf(end):
        return start
    return (start + end) / 2


def _finite_or_str(value: float):
    return value if math.isfinite(value) else ("inf" if value > 0 else "-inf")
