"""
JSON export for RareLens
"""

import json
import math
from datetime import datetime
from pathlib import Path
from typing import Any, Optional

from .. import __version__
from ..models import DatasetProfile, EvalReport, RunRecord


class JsonExporter:
    """
    Export RareLens results to JSON.

    Every document carries a meta block. Non-finite floats are written
    as the strings "inf", "-inf" and "nan" so the output stays strict
    JSON. With timestamp=False the output is a pure function of the
    results (used for benchmark runs).
    """

    def __init__(self, timestamp: bool = True):
        self.timestamp = timestamp

    def _meta(self, **extra) -> dict:
        meta = {"version": __version__, "generator": "RareLens"}
        if self.timestamp:
            meta["generated_at"] = datetime.now().isoformat()
        meta.update(extra)
        return meta

    def export_runs(self, records: list[RunRecord], seed: int,
                    output_path: Optional[Path] = None) -> dict:
        """
        Export benchmark run records (wall times excluded).

        Args:
            records: Runs in task order
            seed: Master seed of the benchmark
            output_path: Optional file path to write

        Returns:
            JSON-serializable dict
        """
        data = {
            "meta": self._meta(seed=seed),
            "runs": [r.to_dict() for r in records],
        }
        return self._finish(data, output_path)

    def export_report(self, report: EvalReport, output_path: Optional[Path] = None) -> dict:
        return self._finish({"meta": self._meta(), **report.to_dict()}, output_path)

    def export_profiles(self, profiles: dict[str, DatasetProfile],
                        output_path: Optional[Path] = None) -> dict:
        data = {
            "meta": self._meta(),
            "profiles": {name: p.to_dict() for name, p in profiles.items()},
        }
        return self._finish(data, output_path)

    def export(self, payload: dict, output_path: Optional[Path] = None) -> dict:
        """Export an arbitrary payload under a meta block"""
        return self._finish({"meta": self._meta(), **payload}, output_path)

    def dumps(self, data: dict) -> str:
        return json.dumps(_jsonable(data), indent=2, ensure_ascii=False)

    def _finish(self, data: dict, output_path: Optional[Path]) -> dict:
        data = _jsonable(data)
        if output_path:
            self._write_file(data, output_path)
        return data

    def _write_file(self, data: dict, path: Path):
        """Write JSON to file"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)

        with open(path, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, ensure_ascii=False)
            f.write("\n")


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, 'item') and not isinstance(value, (str, bytes)):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value
