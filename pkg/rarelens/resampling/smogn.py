"""
SMOGN: SmoteR interpolation for close neighbours, Gaussian noise otherwise
"""

import logging

import numpy as np

from ..models import Dataset, ResampleSpec, Strategy
from .base import RelevanceLike, SyntheticResampler
from .distance import DistanceSchema
from .synth import interpolate, nearest_neighbours, per_seed_counts, perturb


log = logging.getLogger(__name__)


class SmognResampler(SyntheticResampler):
    """
    For each seed, maxD is half the median distance to the other bin
    rows. A picked neighbour closer than maxD (or at distance 0) is
    interpolated with; otherwise the seed is perturbed with amplitude
    min(maxD, delta).
    """

    strategy = Strategy.SG

    def _generate(self, bin_x, bin_y, n_new, dataset, gen):
        schema = DistanceSchema.fit(dataset)
        size = len(bin_x)
        k = min(self.spec.k, size - 1)
        if k < self.spec.k:
            log.warning("k=%d exceeds the %d neighbours available in a rare bin; using %d",
                        self.spec.k, size - 1, k)

        dist = schema.pairwise(bin_x, bin_x)
        counts = per_seed_counts(n_new, size)
        xs, ys = [], []

        for i in np.flatnonzero(counts):
            others = np.delete(dist[i], i)
            max_d = float(np.median(others)) / 2
            picks = gen.choice(nearest_neighbours(dist[i], i, k), size=counts[i])
            d = dist[i, picks]
            safe = (d < max_d) | (d == 0)

            seeds = np.full(counts[i], i)
            x = np.empty((counts[i], bin_x.shape[1]))
            y = np.empty(counts[i])

            if safe.any():
                x[safe], y[safe] = interpolate(
                    bin_x[seeds[safe]], bin_y[seeds[safe]],
                    bin_x[picks[safe]], bin_y[picks[safe]], schema, gen,
                )
            if (~safe).any():
                x[~safe], y[~safe] = perturb(
                    bin_x[seeds[~safe]], bin_y[seeds[~safe]], bin_x, bin_y,
                    schema.nominal, min(max_d, self.spec.delta), gen,
                )
            xs.append(x)
            ys.append(y)

        return np.concatenate(xs), np.concatenate(ys)


def smogn(dataset: Dataset, relevance: RelevanceLike, spec: ResampleSpec) -> Dataset:
    return SmognResampler(spec).resample(dataset, relevance)
