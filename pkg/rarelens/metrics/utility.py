"""
Utility-based evaluation: utility surface, precision, recall and F-score
"""

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from ..errors import UndefinedMetricError
from ..models import DEFAULT_THRESHOLD, PredictionBatch
from ..relevance.bumps import BumpPartition, bump_partition
from ..relevance.pchip import RelevanceFunction


DEFAULT_P = 0.5
DEFAULT_BETA = 1.0


@dataclass(frozen=True, eq=False)
class UtilityContext:
    """Relevance function, its bumps and the evaluation parameters"""
    relevance: RelevanceFunction
    bumps: Optional[BumpPartition] = None
    p: float = DEFAULT_P
    threshold: float = DEFAULT_THRESHOLD
    beta: float = DEFAULT_BETA

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if not self.beta > 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if not 0 < self.threshold <= 1:
            raise ValueError(f"threshold must lie in (0, 1], got {self.threshold}")
        if self.bumps is None:
            object.__setattr__(self, 'bumps', bump_partition(self.relevance))


@dataclass(frozen=True, eq=False)
class UtilityTerms:
    """Intermediate quantities of the utility computation, per pair"""
    phi_true: np.ndarray
    phi_pred: np.ndarray
    loss: np.ndarray
    benefit_threshold: np.ndarray
    cost_threshold: np.ndarray
    gamma_benefit: np.ndarray
    gamma_cost: np.ndarray
    phi_weighted: np.ndarray
    utility: np.ndarray = field(repr=False)


def _bounded(loss: np.ndarray, threshold: np.ndarray) -> np.ndarray:
    """loss / threshold below the threshold, 1 at or above it, 0 for zero loss"""
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(loss < threshold, loss / threshold, 1.0)
    return np.where(loss == 0, 0.0, ratio)


def utility_terms(y_pred, y_true, ctx: UtilityContext) -> UtilityTerms:
    y_pred = np.atleast_1d(np.asarray(y_pred, dtype=float))
    y_true = np.atleast_1d(np.asarray(y_true, dtype=float))
    bumps = ctx.bumps

    phi_true = np.atleast_1d(ctx.relevance(y_true))
    phi_pred = np.atleast_1d(ctx.relevance(y_pred))
    loss = np.abs(y_pred - y_true)
    under = y_pred < y_true

    gamma = bumps.locate(y_true)
    max_loss = bumps.max_losses[gamma]

    # Benefit: distance to the boundary of y's bump on the side of the prediction
    lowers = bumps.lowers
    boundary = np.where(under, lowers[gamma], lowers[gamma + 1])
    benefit_threshold = np.minimum(max_loss, np.abs(y_true - boundary))

    # Cost: distance to the peak of the neighbouring bump on that side
    peaks = np.concatenate([[np.nan], bumps.peaks, [np.nan]])
    neighbour = np.where(under, peaks[gamma], peaks[gamma + 2])
    to_neighbour = np.where(np.isnan(neighbour), np.inf, np.abs(y_true - neighbour))
    cost_threshold = np.minimum(max_loss, to_neighbour)

    gamma_benefit = _bounded(loss, benefit_threshold)
    gamma_cost = _bounded(loss, cost_threshold)
    phi_weighted = (1 - ctx.p) * phi_pred + ctx.p * phi_true

    u = phi_true * (1 - gamma_benefit) - phi_weighted * gamma_cost
    return UtilityTerms(phi_true, phi_pred, loss, benefit_threshold, cost_threshold,
                        gamma_benefit, gamma_cost, phi_weighted, u)


def utility(y_pred: Union[float, np.ndarray], y_true: Union[float, np.ndarray],
            ctx: UtilityContext):
    """
    Utility of predicting y_pred for y_true, in [-1, 1].

    Benefit phi(y) * (1 - Gamma_B) minus cost phi_p * Gamma_C, where the
    bounded losses compare |y_pred - y_true| with thresholds derived
    from the bump containing y_true. Vectorised over arrays.
    """
    u = utility_terms(y_pred, y_true, ctx).utility
    return float(u[0]) if np.ndim(y_pred) == 0 and np.ndim(y_true) == 0 else u


def precision_u(batch: PredictionBatch, ctx: UtilityContext) -> float:
    """Utility-based precision over predictions with phi(y_pred) > threshold"""
    terms = utility_terms(batch.y_pred, batch.y_true, ctx)
    selected = terms.phi_pred > ctx.threshold
    if not selected.any():
        raise UndefinedMetricError('precision')
    return float(np.sum(1 + terms.utility[selected]) / np.sum(1 + terms.phi_pred[selected]))


def recall_u(batch: PredictionBatch, ctx: UtilityContext) -> float:
    """Utility-based recall over true values with phi(y_true) > threshold"""
    terms = utility_terms(batch.y_pred, batch.y_true, ctx)
    selected = terms.phi_true > ctx.threshold
    if not selected.any():
        raise UndefinedMetricError('recall')
    return float(np.sum(1 + terms.utility[selected]) / np.sum(1 + terms.phi_true[selected]))


def f_score(precision: float, recall: float, beta: float = DEFAULT_BETA) -> float:
    denominator = beta ** 2 * precision + recall
    if denominator == 0:
        return 0.0
    return (beta ** 2 + 1) * precision * recall / denominator


def f1_u(batch: PredictionBatch, ctx: UtilityContext) -> float:
    return f_score(precision_u(batch, ctx), recall_u(batch, ctx), ctx.beta)
