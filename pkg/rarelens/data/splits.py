"""
Repeated k-fold cross-validation splits
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import ConfigError, DatasetError
from ..models import Dataset
from ..rng import RngStream


@dataclass(frozen=True, eq=False)
class Split:
    """Train/test row positions for one fold of one repeat"""
    repeat: int
    fold: int
    train: np.ndarray
    test: np.ndarray


def kfold_split(data: Union[Dataset, int], k: int, repeats: int,
                rng: RngStream) -> list[Split]:
    """
    Shuffled k-fold partitions, repeated.

    Each repeat draws a fresh permutation and cuts it into k folds of
    size floor(N/k) or ceil(N/k); every row lands in exactly one test
    fold per repeat.

    Args:
        data: Dataset (or its row count)
        k: Number of folds (2 <= k <= N)
        repeats: Number of repetitions
        rng: Stream driving the permutations

    Returns:
        repeats * k splits, ordered by (repeat, fold)
    """
    n = data if isinstance(data, int) else data.n_rows

    if k < 2:
        raise ConfigError(f"k must be >= 2, got {k}")
    if repeats < 1:
        raise ConfigError(f"repeats must be >= 1, got {repeats}")
    if k > n:
        raise DatasetError(f"Cannot split {n} rows into {k} folds")

    gen = rng.generator()
    splits = []

    for repeat in range(repeats):
        folds = np.array_split(gen.permutation(n), k)
        for fold, test in enumerate(folds):
            test = np.sort(test)
            train = np.setdiff1d(np.arange(n), test, assume_unique=True)
            splits.append(Split(repeat=repeat, fold=fold, train=train, test=test))

    return splits
