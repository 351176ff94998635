"""
Introduction of Gaussian noise around rare seeds
"""

import numpy as np

from ..models import Dataset, ResampleSpec, Strategy
from .base import RelevanceLike, SyntheticResampler
from .synth import per_seed_counts, perturb


class GaussianNoiseResampler(SyntheticResampler):
    """
    Each rare row seeds noisy copies of itself: additive N(0, delta * sd)
    on numeric attributes and the target, nominal values redrawn from
    the bin's frequencies.
    """

    strategy = Strategy.GN

    def _generate(self, bin_x, bin_y, n_new, dataset, gen):
        seeds = np.repeat(np.arange(len(bin_x)), per_seed_counts(n_new, len(bin_x)))
        return perturb(bin_x[seeds], bin_y[seeds], bin_x, bin_y,
                       dataset.schema.nominal_mask, self.spec.delta, gen)


def gaussian_noise(dataset: Dataset, relevance: RelevanceLike, spec: ResampleSpec) -> Dataset:
    return GaussianNoiseResampler(spec).resample(dataset, relevance)
