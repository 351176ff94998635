"""
Resampling dispatcher
"""

import logging
from dataclasses import dataclass
from typing import Optional

from ..data.encoding import decode_nominals, encode_nominals
from ..models import Dataset, ResampleSpec, Strategy
from .base import BaseResampler, RelevanceLike
from .gaussian_noise import GaussianNoiseResampler
from .random_over import RandomOversampler
from .random_under import RandomUndersampler
from .smogn import SmognResampler
from .smoter import SmoteRResampler
from .wercs import WercsResampler


log = logging.getLogger(__name__)


@dataclass
class ResampleReport:
    """Size change produced by one resampling run"""
    strategy: str
    params: dict
    size_before: int
    size_after: int

    @property
    def pct_change(self) -> float:
        return 100.0 * (self.size_after - self.size_before) / self.size_before

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "params": self.params,
            "input_size": self.size_before,
            "output_size": self.size_after,
            "pct_change": round(self.pct_change, 4),
        }


class Resampler:
    """
    Runs the strategy named by a ResampleSpec.

    Strategy 'none' passes the training set through unchanged.
    Nominal attributes are encoded for the strategy and, unless
    keep_encoded is set, decoded again in the result.
    """

    STRATEGIES: dict[Strategy, type[BaseResampler]] = {
        Strategy.SMT: SmoteRResampler,
        Strategy.RO: RandomOversampler,
        Strategy.RU: RandomUndersampler,
        Strategy.GN: GaussianNoiseResampler,
        Strategy.SG: SmognResampler,
        Strategy.WERCS: WercsResampler,
    }

    def __init__(self, spec: ResampleSpec, keep_encoded: bool = False):
        self.spec = spec
        self.keep_encoded = keep_encoded
        self.report: Optional[ResampleReport] = None

    def _create(self) -> BaseResampler:
        resampler_class = self.STRATEGIES.get(self.spec.strategy)
        if not resampler_class:
            raise ValueError(
                f"Unknown strategy '{self.spec.strategy.value}'. "
                f"Supported: {', '.join(s.value for s in self.STRATEGIES)}"
            )
        return resampler_class(self.spec)

    def resample(self, dataset: Dataset, relevance: RelevanceLike) -> Dataset:
        if self.spec.strategy == Strategy.NONE:
            result = dataset
        else:
            was_encoded = dataset.schema.is_encoded
            result = self._create().resample(encode_nominals(dataset), relevance)
            if not (was_encoded or self.keep_encoded):
                result = decode_nominals(result)

        self.report = ResampleReport(
            strategy=self.spec.strategy.value,
            params=self.spec.params(),
            size_before=dataset.n_rows,
            size_after=result.n_rows,
        )
        log.info("Resampled with %s: %d -> %d rows (%+.1f%%)", self.spec.strategy.value,
                 self.report.size_before, self.report.size_after, self.report.pct_change)
        return result


def resample(dataset: Dataset, relevance: RelevanceLike, spec: ResampleSpec) -> Dataset:
    return Resampler(spec).resample(dataset, relevance)
