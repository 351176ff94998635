"""
CSV ingestion with schema inference
"""

import logging
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..errors import DatasetError
from ..models import Attribute, AttributeKind, Dataset, Schema


log = logging.getLogger(__name__)

# A hint is "numeric", "nominal", an AttributeKind, or an ordered
# category list (ordinal attribute)
SchemaHint = Union[str, AttributeKind, Sequence[str]]


def load_csv(path: Union[str, Path], target: str,
             hints: Optional[Mapping[str, SchemaHint]] = None) -> Dataset:
    """
    Load a CSV file into a Dataset.

    A column is numeric iff every cell parses as a finite real number,
    otherwise nominal with categories in first-appearance order. Hints
    override the inference per column.

    Args:
        path: CSV file with a header row (UTF-8, "." decimal separator)
        target: Name of the continuous target column
        hints: Optional per-column kind overrides

    Returns:
        Dataset with rows in file order, row ids 0..N-1

    Raises:
        DatasetError: missing file/target, empty file, ragged rows,
            missing cells or unparseable target values
    """
    path = Path(path)
    hints = dict(hints or {})

    if not path.exists():
        raise DatasetError(f"File not found: {path}")

    try:
        raw = pd.read_csv(path, dtype=str, keep_default_na=False,
                          index_col=False, encoding='utf-8')
    except pd.errors.EmptyDataError:
        raise DatasetError(f"Empty file: {path}")
    except pd.errors.ParserError as e:
        raise DatasetError(f"Ragged rows in {path}: {e}")

    if raw.empty:
        raise DatasetError(f"No data rows in {path}")

    if target not in raw.columns:
        raise DatasetError(f"Target column '{target}' not found in {path}")

    unknown = set(hints) - set(raw.columns)
    if unknown:
        raise DatasetError(f"Schema hints for unknown columns: {sorted(unknown)}")

    # Short rows come back as NaN, empty cells as ""
    short = raw.isna().any(axis=1)
    if short.any():
        line = int(np.flatnonzero(short.to_numpy())[0]) + 2
        raise DatasetError(f"Ragged row at line {line} of {path}")

    empty = (raw == "").to_numpy()
    if empty.any():
        row, col = np.argwhere(empty)[0]
        raise DatasetError(
            f"Missing cell in column '{raw.columns[col]}' at line {row + 2} of {path}"
        )

    frame = pd.DataFrame(index=pd.RangeIndex(len(raw)))
    attributes = []

    for name in raw.columns:
        if name == target:
            continue
        attr, values = _infer_column(name, raw[name], hints.get(name))
        attributes.append(attr)
        frame[name] = values

    frame[target] = _parse_target(raw[target], target)

    schema = Schema(attributes=tuple(attributes), target=target)
    dataset = Dataset(schema, frame)
    log.debug("Loaded %s: %d rows, %d attributes (%d nominal)",
              path, dataset.n_rows, schema.p_total, schema.p_nom)
    return dataset


def write_csv(dataset: Dataset, path: Union[str, Path]) -> None:
    """Write a Dataset as CSV (header + rows, no index)"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    dataset.frame.to_csv(path, index=False, encoding='utf-8')


def _parse_target(column: pd.Series, name: str) -> np.ndarray:
    values = pd.to_numeric(column, errors='coerce').to_numpy(dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise DatasetError(
            f"Unparseable target value '{column.iloc[row]}' in column '{name}' at line {row + 2}"
        )
    return values


def _infer_column(name: str, column: pd.Series,
                  hint: Optional[SchemaHint]) -> tuple[Attribute, pd.Series]:
    """Decide the kind of one predictor column and convert its values"""
    numeric = pd.to_numeric(column, errors='coerce')

    if isinstance(hint, str) and not isinstance(hint, AttributeKind):
        try:
            hint = AttributeKind(hint.lower())
        except ValueError:
            raise DatasetError(f"Unknown kind '{hint}' for column '{name}'")

    if hint is None:
        kind = AttributeKind.NUMERIC if numeric.notna().all() else AttributeKind.NOMINAL
    elif isinstance(hint, AttributeKind):
        kind = hint
    else:
        order = tuple(str(c) for c in hint)
        unseen = set(column.unique()) - set(order)
        if unseen:
            raise DatasetError(f"Ordinal column '{name}' has undeclared values: {sorted(unseen)}")
        return Attribute(name, AttributeKind.ORDINAL, order), column.astype(object)

    if kind == AttributeKind.NUMERIC:
        values = numeric.to_numpy(dtype=float)
        if not np.all(np.isfinite(values)):
            raise DatasetError(f"Column '{name}' declared numeric has non-finite or unparseable values")
        return Attribute(name, AttributeKind.NUMERIC), pd.Series(values)

    if kind == AttributeKind.ORDINAL:
        raise DatasetError(f"Ordinal column '{name}' needs an explicit category order")

    categories = tuple(str(c) for c in pd.unique(column))
    return Attribute(name, AttributeKind.NOMINAL, categories), column.astype(object)
