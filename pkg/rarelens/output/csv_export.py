"""
CSV reports for benchmark results
"""

from pathlib import Path
from typing import Optional

import pandas as pd

from ..harness.aggregate import (REPORTED_METRICS, avg_rank, metric_summary, size_change,
                                 win_table)
from ..models import RunRecord


class CsvExporter:
    """
    Write the benchmark tables: wins.csv and ranks.csv (one row per
    metric, one column per strategy), results.csv (mean and sd per
    dataset, strategy and metric), sizes.csv and timings.csv.
    """

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def export_all(self, records: list[RunRecord]) -> dict[str, Path]:
        return {
            "wins": self.export_wins(records),
            "ranks": self.export_ranks(records),
            "results": self.export_results(records),
            "sizes": self.export_sizes(records),
            "timings": self.export_timings(records),
        }

    def export_wins(self, records: list[RunRecord], name: str = "wins.csv") -> Path:
        rows = [{"metric": m, **win_table(records, m)} for m in REPORTED_METRICS]
        return self._write(pd.DataFrame(rows), name, float_format="%.4f")

    def export_ranks(self, records: list[RunRecord], name: str = "ranks.csv") -> Path:
        rows = [{"metric": m, **avg_rank(records, m)} for m in REPORTED_METRICS]
        return self._write(pd.DataFrame(rows), name, float_format="%.4f")

    def export_results(self, records: list[RunRecord], name: str = "results.csv") -> Path:
        frame = pd.DataFrame(
            [s.to_dict() for s in metric_summary(records)],
            columns=["dataset", "strategy", "metric", "runs", "mean", "sd"],
        )
        return self._write(frame, name, float_format="%.6g")

    def export_sizes(self, records: list[RunRecord], name: str = "sizes.csv") -> Path:
        frame = pd.DataFrame(
            [c.to_dict() for c in size_change(records)],
            columns=["dataset", "strategy", "runs", "train_size_before",
                     "train_size_after", "pct_change"],
        )
        return self._write(frame, name)

    def export_timings(self, records: list[RunRecord], name: str = "timings.csv") -> Path:
        frame = pd.DataFrame(
            [{"dataset": r.dataset, "strategy": r.strategy, "repeat": r.repeat,
              "fold": r.fold, "wall_time": round(r.wall_time, 4), "ok": r.ok}
             for r in records],
            columns=["dataset", "strategy", "repeat", "fold", "wall_time", "ok"],
        )
        return self._write(frame, name)

    def _write(self, frame: pd.DataFrame, name: str,
               float_format: Optional[str] = None) -> Path:
        path = self.output_dir / name
        frame.to_csv(path, index=False, float_format=float_format)
        return path
