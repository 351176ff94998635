"""
Random undersampling of normal bins
"""

import numpy as np

from ..models import Dataset, ResampleSpec, Strategy
from .base import BaseResampler, RelevanceLike


class RandomUndersampler(BaseResampler):
    """Keep every rare row and a uniform sample of floor(u_B * |B|) rows per normal bin"""

    strategy = Strategy.RU

    def _resample(self, dataset: Dataset, relevance: RelevanceLike,
                  gen: np.random.Generator) -> Dataset:
        bins, rates = self._bins_and_rates(dataset, relevance)
        kept = [bin_.positions if bin_.rare else self._undersample(bin_, rate, gen)
                for bin_, rate in zip(bins, rates)]
        return self._assemble(dataset, kept)


def random_undersample(dataset: Dataset, relevance: RelevanceLike,
                       spec: ResampleSpec) -> Dataset:
    return RandomUndersampler(spec).resample(dataset, relevance)
