"""
Relevance bins and per-bin resampling rates
"""

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

import numpy as np

from ..errors import NothingToResampleError
from ..models import Dataset, RateMode


# Slack added before flooring so exact products such as 0.6 * 100 keep their row
FLOOR_EPS = 1e-9


@dataclass(frozen=True, eq=False)
class Bin:
    """Consecutive rows (by target) sharing rare/normal status"""
    positions: np.ndarray
    rare: bool

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(frozen=True, eq=False)
class Bins:
    """Run-length partition of a dataset sorted by target"""
    bins: tuple[Bin, ...]
    n_rows: int
    relevance: np.ndarray

    def __iter__(self) -> Iterator[Bin]:
        return iter(self.bins)

    def __len__(self) -> int:
        return len(self.bins)

    @property
    def rare_bins(self) -> list[Bin]:
        return [b for b in self.bins if b.rare]

    @property
    def normal_bins(self) -> list[Bin]:
        return [b for b in self.bins if not b.rare]

    @property
    def n_rare(self) -> int:
        return sum(len(b) for b in self.rare_bins)


@dataclass(frozen=True)
class BinRate:
    """Fraction u of a bin kept and number o of rows added per bin row"""
    u: float = 1.0
    o: float = 0.0

    def kept(self, size: int) -> int:
        return floor_count(min(self.u, 1.0) * size)

    def added(self, size: int) -> int:
        return floor_count(self.o * size)


def floor_count(x: float) -> int:
    return int(math.floor(x + FLOOR_EPS))


def make_bins(dataset: Dataset, relevance: Callable[[np.ndarray], np.ndarray],
              threshold: float) -> Bins:
    """
    Sort rows by target and cut them into maximal runs of equal status.

    Raises:
        NothingToResampleError: no row reaches the threshold
    """
    y = dataset.targets
    phi = np.asarray(relevance(y), dtype=float)
    order = np.argsort(y, kind='stable')
    status = phi[order] >= threshold

    if not status.any():
        raise NothingToResampleError(
            f"No rare rows at threshold {threshold} (max relevance {phi.max():.3f})"
        )

    cuts = np.flatnonzero(np.diff(status.astype(np.int8))) + 1
    bins = tuple(
        Bin(positions=run, rare=bool(status[start]))
        for run, start in zip(np.split(order, cuts), np.concatenate([[0], cuts]))
    )
    return Bins(bins=bins, n_rows=len(y), relevance=phi)


def resolve_rates(mode: RateMode, bins: Bins, u: Optional[float] = None,
                  o: Optional[float] = None) -> list[BinRate]:
    """
    Per-bin rates, one BinRate per bin in order.

    BALANCE moves every bin toward the mean bin size m = N / #bins. A rare
    bin is only oversampled and a normal bin only undersampled, so a rare
    bin above m or a normal bin below m keeps its size.
    EXTREME targets size m^2 / |B|, rescaled so the total stays N.
    EXPLICIT applies u to every normal bin and o to every rare bin.
    Rare bins are only ever oversampled and normal bins only undersampled.
    """
    if len(bins) == 0:
        raise NothingToResampleError("No bins to resample")

    if mode == RateMode.EXPLICIT:
        return [BinRate(o=o or 0.0) if b.rare else BinRate(u=1.0 if u is None else u)
                for b in bins]

    sizes = np.array([len(b) for b in bins], dtype=float)
    mean_size = bins.n_rows / len(bins)

    if mode == RateMode.BALANCE:
        targets = np.full_like(sizes, mean_size)
    elif mode == RateMode.EXTREME:
        inverted = mean_size ** 2 / sizes
        targets = inverted * bins.n_rows / inverted.sum()
    else:
        raise ValueError(f"Unknown rate mode: {mode}")

    rates = []
    for b, size, target in zip(bins, sizes, targets):
        if b.rare and target > size:
            rates.append(BinRate(o=target / size - 1))
        elif not b.rare and target < size:
            rates.append(BinRate(u=target / size))
        else:
            rates.append(BinRate())
    return rates
