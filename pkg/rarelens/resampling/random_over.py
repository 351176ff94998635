"""
Random oversampling of rare bins
"""

import numpy as np

from ..models import Dataset, ResampleSpec, Strategy
from .base import BaseResampler, RelevanceLike


class RandomOversampler(BaseResampler):
    """
    Append exact replicas of rare rows.

    Each rare bin B gets floor(o_B * |B|) rows drawn with replacement;
    replicas keep the id of the row they copy. Normal bins are untouched.
    """

    strategy = Strategy.RO

    def _resample(self, dataset: Dataset, relevance: RelevanceLike,
                  gen: np.random.Generator) -> Dataset:
        bins, rates = self._bins_and_rates(dataset, relevance)
        features = dataset.features()
        targets = dataset.targets
        ids = dataset.row_ids
        new_x, new_y, new_ids = [], [], []

        for bin_, rate in zip(bins, rates):
            n_new = rate.added(len(bin_)) if bin_.rare else 0
            if n_new == 0:
                continue
            picks = gen.choice(bin_.positions, size=n_new, replace=True)
            new_x.append(features[picks])
            new_y.append(targets[picks])
            new_ids.append(ids[picks])

        kept = [np.arange(dataset.n_rows)]
        return self._assemble(dataset, kept, new_x, new_y, new_ids)


def random_oversample(dataset: Dataset, relevance: RelevanceLike,
                      spec: ResampleSpec) -> Dataset:
    return RandomOversampler(spec).resample(dataset, relevance)
