"""
Rare / normal partition of a dataset by relevance threshold
"""

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

import numpy as np

from ..models import Dataset


@dataclass(frozen=True, eq=False)
class RareNormalSplit:
    """
    Rows with relevance >= threshold (rare) and the rest (normal).

    Either side may be empty, in which case it is None. Unpacks as
    (rare, normal).
    """
    rare: Optional[Dataset]
    normal: Optional[Dataset]
    relevance: np.ndarray
    mask: np.ndarray

    def __iter__(self) -> Iterator[Optional[Dataset]]:
        return iter((self.rare, self.normal))

    @property
    def n_rare(self) -> int:
        return int(np.count_nonzero(self.mask))

    @property
    def n_normal(self) -> int:
        return int(self.mask.size - self.n_rare)


def split_rare_normal(dataset: Dataset, relevance: Callable[[np.ndarray], np.ndarray],
                      threshold: float) -> RareNormalSplit:
    """Split rows by phi(y) >= threshold, keeping their order"""
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must lie in (0, 1], got {threshold}")

    phi = np.asarray(relevance(dataset.targets), dtype=float)
    mask = phi >= threshold
    rare_pos = np.flatnonzero(mask)
    normal_pos = np.flatnonzero(~mask)

    return RareNormalSplit(
        rare=dataset.take(rare_pos) if rare_pos.size else None,
        normal=dataset.take(normal_pos) if normal_pos.size else None,
        relevance=phi,
        mask=mask,
    )
