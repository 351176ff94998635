"""
SmoteR: undersampling plus neighbour interpolation
"""

from ..models import Dataset, ResampleSpec, Strategy
from .base import RelevanceLike, SyntheticResampler
from .distance import DistanceSchema
from .synth import gen_synth_cases


class SmoteRResampler(SyntheticResampler):
    """Synthetic rare rows interpolated between a seed and one of its k nearest neighbours"""

    strategy = Strategy.SMT

    def _generate(self, bin_x, bin_y, n_new, dataset, gen):
        schema = DistanceSchema.fit(dataset)
        return gen_synth_cases(bin_x, bin_y, n_new, self.spec.k, schema, gen)


def smoter(dataset: Dataset, relevance: RelevanceLike, spec: ResampleSpec) -> Dataset:
    return SmoteRResampler(spec).resample(dataset, relevance)
