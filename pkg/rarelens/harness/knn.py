"""
k-nearest-neighbour regressor used by the benchmark
"""

from typing import Optional

import numpy as np

from ..errors import ConfigError, DatasetError
from ..models import Dataset
from ..resampling.distance import DistanceSchema


# Test rows per distance block
CHUNK_SIZE = 512


class KNNRegressor:
    """
    Mean target of the k nearest training rows under the heterogeneous
    distance; equal distances go to the lower training position.
    """

    def __init__(self, k: int = 5, schema: Optional[DistanceSchema] = None):
        if k < 1:
            raise ConfigError(f"k must be >= 1, got {k}")
        self.k = k
        self.schema = schema
        self._features: Optional[np.ndarray] = None
        self._targets: Optional[np.ndarray] = None

    def fit(self, train: Dataset) -> 'KNNRegressor':
        if train.n_rows == 0:
            raise DatasetError("Cannot fit on an empty training set")
        if self.k > train.n_rows:
            raise ConfigError(f"k={self.k} exceeds the {train.n_rows} training rows")
        self._features = train.features()
        self._targets = train.targets
        if self.schema is None:
            self.schema = DistanceSchema.fit(train)
        return self

    def predict(self, features: np.ndarray) -> np.ndarray:
        if self._features is None:
            raise RuntimeError("KNNRegressor.predict called before fit")

        features = np.atleast_2d(np.asarray(features, dtype=float))
        predictions = np.empty(features.shape[0])

        for start in range(0, features.shape[0], CHUNK_SIZE):
            block = features[start:start + CHUNK_SIZE]
            dist = self.schema.pairwise(block, self._features)
            nearest = np.argsort(dist, axis=1, kind='stable')[:, :self.k]
            predictions[start:start + CHUNK_SIZE] = self._targets[nearest].mean(axis=1)

        return predictions


def knn_regressor_fit_predict(train: Dataset, test_features: np.ndarray, k: int,
                              schema: Optional[DistanceSchema] = None) -> np.ndarray:
    return KNNRegressor(k, schema).fit(train).predict(test_features)
