"""
Benchmark harness: configuration, regressor, runner and reports
"""

from .config import (
    DEFAULT_GRIDS, DatasetEntry, ExperimentConfig, StrategyGrid, expand_grid, load_config,
)
from .knn import KNNRegressor, knn_regressor_fit_predict
from .experiment import Experiment, check_leakage, run_experiment
from .aggregate import (
    METRIC_DIRECTIONS, REPORTED_METRICS, MetricSummary, SizeChange,
    avg_rank, failures, mean_metric, metric_summary, size_change, win_table,
)

__all__ = [
    'DEFAULT_GRIDS', 'DatasetEntry', 'ExperimentConfig', 'StrategyGrid',
    'expand_grid', 'load_config',
    'KNNRegressor', 'knn_regressor_fit_predict',
    'Experiment', 'check_leakage', 'run_experiment',
    'METRIC_DIRECTIONS', 'REPORTED_METRICS', 'MetricSummary', 'SizeChange',
    'avg_rank', 'failures', 'mean_metric', 'metric_summary', 'size_change', 'win_table',
]
