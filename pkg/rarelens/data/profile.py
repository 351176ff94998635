"""
Dataset profiling (size, attribute mix, rarity)
"""

from typing import Callable

import numpy as np

from ..models import Dataset, DatasetProfile


def profile(dataset: Dataset, relevance: Callable[[np.ndarray], np.ndarray],
            threshold: float) -> DatasetProfile:
    """
    Profile a dataset against a fitted relevance function.

    Rare rows are those with relevance >= threshold, counted over the
    whole dataset.
    """
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must lie in (0, 1], got {threshold}")

    n = dataset.n_rows
    n_rare = int(np.count_nonzero(relevance(dataset.targets) >= threshold))
    n_normal = n - n_rare

    return DatasetProfile(
        n=n,
        p_total=dataset.schema.p_total,
        p_nom=dataset.schema.p_nom,
        p_num=dataset.schema.p_num,
        n_rare=n_rare,
        ir=n_rare / n_normal if n_normal else float('inf'),
        pct_rare=100.0 * n_rare / n,
    )
