"""
Rarity-aware regression metrics
"""

from .standard import mae, mse
from .utility import (
    DEFAULT_BETA, DEFAULT_P, UtilityContext,
    f1_u, f_score, precision_u, recall_u, utility, utility_terms,
)
from .sera import EXACT, TRAPEZOID, SerCurve, ser_curve, sera
from .evaluate import evaluate_batch

__all__ = [
    'mae', 'mse',
    'DEFAULT_BETA', 'DEFAULT_P', 'UtilityContext',
    'f1_u', 'f_score', 'precision_u', 'recall_u', 'utility', 'utility_terms',
    'EXACT', 'TRAPEZOID', 'SerCurve', 'ser_curve', 'sera',
    'evaluate_batch',
]
