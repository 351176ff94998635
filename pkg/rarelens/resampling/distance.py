"""
Heterogeneous distance over encoded attributes

Numeric attributes contribute |a - b| / range, nominal attributes 0 when
equal and 1 otherwise; the terms combine as a Euclidean norm. Ranges
come from the data the schema is fitted on; a zero range contributes 0.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from ..models import Dataset


@dataclass(frozen=True, eq=False)
class DistanceSchema:
    nominal: np.ndarray
    ranges: np.ndarray

    @classmethod
    def fit(cls, dataset: Dataset) -> 'DistanceSchema':
        return cls.from_features(dataset.features(), dataset.schema.nominal_mask)

    @classmethod
    def from_features(cls, features: np.ndarray, nominal: np.ndarray) -> 'DistanceSchema':
        features = np.asarray(features, dtype=float)
        nominal = np.asarray(nominal, dtype=bool)
        if features.shape[0] == 0:
            ranges = np.zeros(features.shape[1])
        else:
            ranges = features.max(axis=0) - features.min(axis=0)
        return cls(nominal=nominal, ranges=np.where(nominal, 0.0, ranges))

    @property
    def n_attributes(self) -> int:
        return self.nominal.size

    def _scaled(self, x: np.ndarray) -> np.ndarray:
        numeric = ~self.nominal
        ranges = self.ranges[numeric]
        scale = np.divide(1.0, ranges, out=np.zeros_like(ranges), where=ranges > 0)
        return x[:, numeric] * scale

    def pairwise(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Distance matrix between the rows of a and the rows of b"""
        a = np.atleast_2d(np.asarray(a, dtype=float))
        b = np.atleast_2d(np.asarray(b, dtype=float))

        squared = np.zeros((a.shape[0], b.shape[0]))
        if (~self.nominal).any():
            squared += cdist(self._scaled(a), self._scaled(b), 'sqeuclidean')
        if self.nominal.any():
            squared += cdist(a[:, self.nominal], b[:, self.nominal], 'hamming') * self.nominal.sum()
        return np.sqrt(squared)

    def rowwise(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Distances between matching rows of a and b"""
        a = np.atleast_2d(np.asarray(a, dtype=float))
        b = np.atleast_2d(np.asarray(b, dtype=float))

        numeric = ~self.nominal
        diff = np.abs(a[:, numeric] - b[:, numeric])
        ranges = self.ranges[numeric]
        terms = np.divide(diff, ranges, out=np.zeros_like(diff), where=ranges > 0)
        mismatches = (a[:, self.nominal] != b[:, self.nominal]).sum(axis=1)
        return np.sqrt((terms ** 2).sum(axis=1) + mismatches)


def distance(a: np.ndarray, b: np.ndarray, schema: DistanceSchema) -> float:
    """Distance between two encoded rows"""
    return float(schema.rowwise(a, b)[0])


def pairwise(a: np.ndarray, b: np.ndarray, schema: DistanceSchema) -> np.ndarray:
    return schema.pairwise(a, b)
