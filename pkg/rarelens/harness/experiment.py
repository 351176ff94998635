"""
Benchmark runner: repeated outer cross-validation with nested selection
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..data.encoding import encode_nominals
from ..data.loader import load_csv
from ..data.splits import Split, kfold_split
from ..errors import LeakageError, RareLensError, RunTimeoutError
from ..metrics.evaluate import evaluate_batch
from ..metrics.sera import sera
from ..metrics.utility import UtilityContext
from ..models import SYNTHETIC_ROW_ID, Dataset, PredictionBatch, ResampleSpec, RunRecord
from ..relevance.pchip import RelevanceFunction, fit_relevance
from ..resampling.resampler import Resampler
from ..rng import RngStream
from .config import ExperimentConfig, StrategyGrid
from .knn import knn_regressor_fit_predict


log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RunTask:
    """One (dataset, strategy, repeat, fold) unit of work"""
    dataset_name: str
    dataset: Dataset
    grid: StrategyGrid
    split: Split


class Experiment:
    """
    Runs every (dataset, strategy, outer fold) combination of a config.

    Per run: the relevance function is fitted on the outer-train targets;
    an inner cross-validation on the outer-train split picks the grid
    point with the lowest mean SERA; the chosen spec resamples the whole
    outer-train split; a kNN regressor trained on the result predicts the
    untouched outer-test split. Failures are recorded, never raised,
    except for leakage which aborts the sweep.
    """

    def __init__(self, config: ExperimentConfig,
                 on_run: Optional[Callable[[RunRecord], None]] = None):
        self.config = config
        self.on_run = on_run
        self.master = RngStream(seed=config.seed)

    def tasks(self) -> list[RunTask]:
        """All runs in (dataset, strategy, repeat, fold) order"""
        cfg = self.config
        tasks = []
        for entry in cfg.datasets:
            dataset = encode_nominals(load_csv(entry.path, entry.target, entry.hints))
            # Same outer splits for every strategy of a dataset
            splits = kfold_split(dataset, cfg.folds, cfg.repeats,
                                 self.master.derive('splits', entry.name))
            for grid in cfg.strategies:
                for split in splits:
                    tasks.append(RunTask(entry.name, dataset, grid, split))
        return tasks

    def run(self) -> list[RunRecord]:
        tasks = self.tasks()
        log.info("Running %d tasks on %d worker(s)", len(tasks), self.config.workers)

        records = []
        if self.config.workers == 1:
            for task in tasks:
                records.append(self._notify(self.run_task(task)))
        else:
            with ThreadPoolExecutor(max_workers=self.config.workers) as executor:
                for record in executor.map(self.run_task, tasks):
                    records.append(self._notify(record))
        return records

    def _notify(self, record: RunRecord) -> RunRecord:
        if self.on_run:
            self.on_run(record)
        return record

    def run_task(self, task: RunTask) -> RunRecord:
        cfg = self.config
        split = task.split
        strategy = task.grid.strategy.value
        rng = self.master.derive(task.dataset_name, strategy, split.repeat, split.fold)

        record = RunRecord(dataset=task.dataset_name, strategy=strategy,
                           repeat=split.repeat, fold=split.fold,
                           train_size_before=len(split.train))
        start = time.perf_counter()
        deadline = start + cfg.timeout

        try:
            train = task.dataset.take(split.train)
            test = task.dataset.take(split.test)
            relevance = fit_relevance(train.targets)

            spec = self._select(train, relevance, task.grid, rng, deadline, record.notes)
            _check_deadline(deadline)

            resampler = Resampler(spec, keep_encoded=True)
            resampled = resampler.resample(train, relevance)
            check_leakage(resampled, test)

            predictions = knn_regressor_fit_predict(
                resampled, test.features(), min(cfg.knn_k, resampled.n_rows))
            _check_deadline(deadline)

            ctx = UtilityContext(relevance, p=cfg.p, threshold=cfg.threshold, beta=cfg.beta)
            report = evaluate_batch(PredictionBatch(test.targets, predictions), ctx)

            record.params = spec.params()
            record.metrics = report.metrics()
            record.train_size_after = resampled.n_rows
            if report.undefined:
                record.notes.append(f"undefined: {', '.join(report.undefined)}")
        except LeakageError:
            raise
        except RareLensError as e:
            record.failure = f"{type(e).__name__}: {e}"
            log.warning("%s/%s repeat %d fold %d failed: %s", task.dataset_name, strategy,
                        split.repeat, split.fold, e)

        record.wall_time = time.perf_counter() - start
        return record

    def _select(self, train: Dataset, relevance: RelevanceFunction, grid: StrategyGrid,
                rng: RngStream, deadline: float, notes: list[str]) -> ResampleSpec:
        """Grid point with the lowest mean inner-CV SERA (first one on ties)"""
        if len(grid.points) == 1:
            return grid.points[0].with_rng(rng.derive('resample'))

        inner = kfold_split(train, self.config.inner_folds, 1, rng.derive('inner'))
        scores = []
        last_error: Optional[RareLensError] = None

        for j, point in enumerate(grid.points):
            fold_scores = []
            for split in inner:
                _check_deadline(deadline)
                spec = point.with_rng(rng.derive('inner', j, split.fold))
                try:
                    fold_scores.append(self._inner_score(train, split, relevance, spec))
                except RunTimeoutError:
                    raise
                except RareLensError as e:
                    last_error = e
                    fold_scores = [math.inf]
                    break
            scores.append(float(np.mean(fold_scores)))

        best = int(np.argmin(scores))
        if math.isinf(scores[best]):
            raise last_error

        tied = [j for j, s in enumerate(scores) if math.isclose(s, scores[best], rel_tol=1e-12)]
        if len(tied) > 1:
            notes.append(f"selection tie between grid points {tied}; kept {best}")
            log.warning("Nested selection tie between grid points %s; keeping the first", tied)

        return grid.points[best].with_rng(rng.derive('resample'))

    def _inner_score(self, train: Dataset, split: Split, relevance: RelevanceFunction,
                     spec: ResampleSpec) -> float:
        fit_part = train.take(split.train)
        score_part = train.take(split.test)
        resampled = Resampler(spec, keep_encoded=True).resample(fit_part, relevance)
        predictions = knn_regressor_fit_predict(
            resampled, score_part.features(), min(self.config.knn_k, resampled.n_rows))
        batch = PredictionBatch(score_part.targets, predictions)
        return sera(batch, relevance(score_part.targets))


def check_leakage(train: Dataset, test: Dataset) -> None:
    """Raise LeakageError if any test row id reaches the training set"""
    train_ids = train.row_ids[train.row_ids != SYNTHETIC_ROW_ID]
    leaked = np.intersect1d(train_ids, test.row_ids)
    if leaked.size:
        raise LeakageError(f"Test rows {leaked[:5].tolist()} found in a training set")


def _check_deadline(deadline: float) -> None:
    if time.perf_counter() > deadline:
        raise RunTimeoutError("Run exceeded its time budget")


def run_experiment(config: ExperimentConfig,
                   on_run: Optional[Callable[[RunRecord], None]] = None) -> list[RunRecord]:
    return Experiment(config, on_run).run()
