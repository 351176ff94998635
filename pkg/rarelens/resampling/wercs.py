"""
WERCS: relevance-weighted over- and undersampling without a threshold
"""

import logging

import numpy as np

from ..models import Dataset, ResampleSpec, Strategy
from .base import BaseResampler, RelevanceLike
from .bins import floor_count


log = logging.getLogger(__name__)


class WercsResampler(BaseResampler):
    """
    Append floor(o * N) replicas drawn with weights phi, then remove
    floor(u * N) distinct original rows drawn with weights 1 - phi.
    Replicas are never removal candidates.
    """

    strategy = Strategy.WERCS

    def _resample(self, dataset: Dataset, relevance: RelevanceLike,
                  gen: np.random.Generator) -> Dataset:
        n = dataset.n_rows
        phi = np.clip(np.asarray(relevance(dataset.targets), dtype=float), 0.0, 1.0)

        n_over = floor_count(self.spec.o * n)
        n_under = floor_count(self.spec.u * n)

        picks = np.empty(0, dtype=int)
        if n_over:
            picks = gen.choice(n, size=n_over, replace=True, p=_weights(phi, "oversampling"))

        removed = np.empty(0, dtype=int)
        if n_under:
            weights = _weights(1.0 - phi, "undersampling")
            available = int(np.count_nonzero(weights))
            if n_under > available:
                log.warning("WERCS: only %d rows can be removed, %d requested", available, n_under)
                n_under = available
            removed = gen.choice(n, size=n_under, replace=False, p=weights)

        kept = [np.setdiff1d(np.arange(n), removed)]
        if not picks.size:
            return self._assemble(dataset, kept)

        return self._assemble(dataset, kept, [dataset.features()[picks]],
                              [dataset.targets[picks]], [dataset.row_ids[picks]])


def _weights(raw: np.ndarray, direction: str) -> np.ndarray:
    total = raw.sum()
    if total <= 0:
        log.warning("WERCS: all %s weights are zero, sampling uniformly", direction)
        return np.full(raw.size, 1.0 / raw.size)
    return raw / total


def wercs(dataset: Dataset, relevance: RelevanceLike, spec: ResampleSpec) -> Dataset:
    return WercsResampler(spec).resample(dataset, relevance)
