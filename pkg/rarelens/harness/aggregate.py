"""
Aggregation of benchmark runs: win counts, average ranks, metric summaries
and size changes
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
from scipy.stats import rankdata

from ..models import RunRecord


# Whether a larger value of each metric is better
METRIC_DIRECTIONS = {
    'f1': 'max',
    'precision': 'max',
    'recall': 'max',
    'sera': 'min',
    'mse': 'min',
    'mae': 'min',
}

# Metrics reported in the win and rank tables
REPORTED_METRICS = ('f1', 'sera')


@dataclass
class SizeChange:
    """Mean training-set size change of one strategy on one dataset"""
    dataset: str
    strategy: str
    runs: int
    size_before: float
    size_after: float
    pct_change: float

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset,
            "strategy": self.strategy,
            "runs": self.runs,
            "train_size_before": round(self.size_before, 2),
            "train_size_after": round(self.size_after, 2),
            "pct_change": round(self.pct_change, 2),
        }


@dataclass
class MetricSummary:
    """Spread of one metric over the runs of a strategy on a dataset"""
    dataset: str
    strategy: str
    metric: str
    runs: int
    mean: float
    sd: float

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset,
            "strategy": self.strategy,
            "metric": self.metric,
            "runs": self.runs,
            "mean": self.mean,
            "sd": self.sd,
        }


def _strategies(records: Iterable[RunRecord]) -> list[str]:
    seen = []
    for r in records:
        if r.strategy not in seen:
            seen.append(r.strategy)
    return seen


def _metric_values(records: list[RunRecord], metric: str) -> dict[str, dict[str, list[float]]]:
    if metric not in METRIC_DIRECTIONS:
        raise ValueError(f"Unknown metric '{metric}'")

    values: dict[str, dict[str, list[float]]] = defaultdict(lambda: defaultdict(list))
    for r in records:
        value = r.metrics.get(metric) if r.ok else None
        if value is not None:
            values[r.dataset][r.strategy].append(value)
    return values


def mean_metric(records: list[RunRecord], metric: str) -> dict[str, dict[str, float]]:
    """
    Mean metric per dataset and strategy over successful runs; runs
    lacking the metric are left out, and a strategy with no usable run
    on a dataset is absent for it.
    """
    return {dataset: {s: float(np.mean(v)) for s, v in by_strategy.items()}
            for dataset, by_strategy in _metric_values(records, metric).items()}


def metric_summary(records: list[RunRecord],
                   metrics: Iterable[str] = REPORTED_METRICS) -> list[MetricSummary]:
    """
    Mean and sd per dataset, strategy and metric over the usable runs.
    The sd uses ddof=1 and is 0 for a single run.
    """
    summaries = []
    for metric in metrics:
        for dataset, by_strategy in _metric_values(records, metric).items():
            for strategy, values in by_strategy.items():
                sd = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
                summaries.append(MetricSummary(dataset, strategy, metric, len(values),
                                               float(np.mean(values)), sd))
    return summaries


def _ranks(scores: dict[str, float], metric: str) -> dict[str, float]:
    """Rank 1 = best; tied strategies share the mean of the ranks they span"""
    values = np.array(list(scores.values()))
    if METRIC_DIRECTIONS[metric] == 'max':
        values = -values
    return dict(zip(scores, rankdata(values, method='average')))


def win_table(records: list[RunRecord], metric: str) -> dict[str, float]:
    """
    Points per strategy: on each dataset the best mean metric earns one
    point, split evenly among tied strategies. Points sum to the number
    of datasets with at least one usable run.
    """
    wins = {s: 0.0 for s in _strategies(records)}
    for scores in mean_metric(records, metric).values():
        ranks = _ranks(scores, metric)
        best = min(ranks.values())
        winners = [s for s, rank in ranks.items() if rank == best]
        for strategy in winners:
            wins[strategy] += 1.0 / len(winners)
    return wins


def avg_rank(records: list[RunRecord], metric: str) -> dict[str, Optional[float]]:
    """Mean rank per strategy across datasets (1 = best)"""
    ranks: dict[str, list[float]] = {s: [] for s in _strategies(records)}
    for scores in mean_metric(records, metric).values():
        for strategy, rank in _ranks(scores, metric).items():
            ranks[strategy].append(rank)
    return {s: float(np.mean(r)) if r else None for s, r in ranks.items()}


def size_change(records: list[RunRecord]) -> list[SizeChange]:
    """Mean train-set size before/after resampling per dataset and strategy"""
    groups: dict[tuple[str, str], list[RunRecord]] = defaultdict(list)
    for r in records:
        if r.ok:
            groups[(r.dataset, r.strategy)].append(r)

    changes = []
    for (dataset, strategy), runs in groups.items():
        changes.append(SizeChange(
            dataset=dataset,
            strategy=strategy,
            runs=len(runs),
            size_before=float(np.mean([r.train_size_before for r in runs])),
            size_after=float(np.mean([r.train_size_after for r in runs])),
            pct_change=float(np.mean([r.pct_change for r in runs])),
        ))
    return changes


def failures(records: list[RunRecord]) -> list[RunRecord]:
    return [r for r in records if not r.ok]
