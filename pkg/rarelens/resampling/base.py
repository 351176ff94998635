"""
Abstract base class for resampling strategies
"""

import logging
from abc import ABC, abstractmethod
from typing import Callable, Optional

import numpy as np

from ..data.encoding import encode_nominals
from ..errors import ConfigError, NothingToResampleError
from ..models import Dataset, ResampleSpec, Strategy
from .bins import Bin, BinRate, Bins, make_bins, resolve_rates


log = logging.getLogger(__name__)

RelevanceLike = Callable[[np.ndarray], np.ndarray]


class BaseResampler(ABC):
    """
    Base class for resampling strategies.

    Subclasses implement _resample() on encoded data. Kept input rows
    come first in their input order, followed by new rows.
    """

    strategy: Strategy

    def __init__(self, spec: ResampleSpec):
        if spec.strategy != self.strategy:
            raise ConfigError(
                f"{type(self).__name__} cannot run strategy '{spec.strategy.value}'"
            )
        self.spec = spec

    def resample(self, dataset: Dataset, relevance: RelevanceLike) -> Dataset:
        """
        Resample a training set.

        Args:
            dataset: Training data (nominal attributes are encoded if needed)
            relevance: Fitted relevance function

        Returns:
            Resampled dataset with encoded nominal attributes
        """
        dataset = encode_nominals(dataset)
        gen = self.spec.rng.generator()
        result = self._resample(dataset, relevance, gen)
        log.debug("%s: %d -> %d rows", self.strategy.value, dataset.n_rows, result.n_rows)
        return result

    @abstractmethod
    def _resample(self, dataset: Dataset, relevance: RelevanceLike,
                  gen: np.random.Generator) -> Dataset:
        pass

    def _bins_and_rates(self, dataset: Dataset,
                        relevance: RelevanceLike) -> tuple[Bins, list[BinRate]]:
        bins = make_bins(dataset, relevance, self.spec.threshold)
        rates = resolve_rates(self.spec.rate_mode, bins, self.spec.u, self.spec.o)
        return bins, rates

    @staticmethod
    def _undersample(bin_: Bin, rate: BinRate, gen: np.random.Generator) -> np.ndarray:
        """Positions kept from a normal bin"""
        keep = rate.kept(len(bin_))
        if keep >= len(bin_):
            return bin_.positions
        return gen.choice(bin_.positions, size=keep, replace=False)

    @staticmethod
    def _assemble(dataset: Dataset, kept: list[np.ndarray],
                  new_x: Optional[list[np.ndarray]] = None,
                  new_y: Optional[list[np.ndarray]] = None,
                  new_ids: Optional[list[np.ndarray]] = None) -> Dataset:
        """Kept rows in input order, then new rows"""
        positions = np.sort(np.concatenate(kept)) if kept else np.empty(0, dtype=int)

        if new_y is not None and sum(len(v) for v in new_y) == 0:
            new_x = None

        if not new_x:
            if positions.size == 0:
                raise NothingToResampleError("Resampling left no rows")
            return dataset.take(positions)

        x = np.concatenate(new_x)
        y = np.concatenate(new_y)
        ids = np.concatenate(new_ids) if new_ids else None
        if positions.size == 0:
            return Dataset.from_arrays(dataset.schema, x, y, ids)
        return dataset.take(positions).append_rows(x, y, ids)


class SyntheticResampler(BaseResampler):
    """
    Shared flow of the generating strategies: normal bins are randomly
    undersampled, rare bins are kept whole and grow by their resolved
    oversampling count. A single-row rare bin is grown by duplication.
    """

    def _resample(self, dataset: Dataset, relevance: RelevanceLike,
                  gen: np.random.Generator) -> Dataset:
        bins, rates = self._bins_and_rates(dataset, relevance)
        features = dataset.features()
        targets = dataset.targets
        kept, new_x, new_y = [], [], []

        for bin_, rate in zip(bins, rates):
            if not bin_.rare:
                kept.append(self._undersample(bin_, rate, gen))
                continue

            kept.append(bin_.positions)
            n_new = rate.added(len(bin_))
            if n_new == 0:
                continue

            bin_x = features[bin_.positions]
            bin_y = targets[bin_.positions]
            if len(bin_) == 1:
                log.warning("%s: rare bin with a single row (y=%g) duplicated %d times",
                            self.strategy.value, bin_y[0], n_new)
                x, y = np.repeat(bin_x, n_new, axis=0), np.repeat(bin_y, n_new)
            else:
                x, y = self._generate(bin_x, bin_y, n_new, dataset, gen)
            new_x.append(x)
            new_y.append(y)

        return self._assemble(dataset, kept, new_x, new_y)

    @abstractmethod
    def _generate(self, bin_x: np.ndarray, bin_y: np.ndarray, n_new: int,
                  dataset: Dataset, gen: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        """n_new synthetic rows for one rare bin of at least two rows"""
        pass
