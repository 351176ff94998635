"""
Standard regression errors
"""

import numpy as np

from ..models import PredictionBatch


def mse(batch: PredictionBatch) -> float:
    return float(np.mean(batch.errors ** 2))


def mae(batch: PredictionBatch) -> float:
    return float(np.mean(np.abs(batch.errors)))
