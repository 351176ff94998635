"""
Integer codification of nominal and ordinal attributes
"""

from dataclasses import replace

import numpy as np
import pandas as pd

from ..errors import DatasetError
from ..models import AttributeKind, Dataset


def encode_nominals(dataset: Dataset) -> Dataset:
    """
    Replace nominal attributes by integer codes.

    Nominal codes 0..(#categories - 1) follow first appearance in the
    data; ordinal attributes use their declared order starting at 1.
    Numeric attributes are untouched. The schema keeps the code map, and
    already-encoded attributes are left as they are (idempotent).
    """
    if dataset.schema.is_encoded:
        return dataset

    frame = dataset.frame.copy()
    attributes = []

    for attr in dataset.schema.attributes:
        if not attr.is_nominal or attr.encoded:
            attributes.append(attr)
            continue

        column = frame[attr.name].astype(str)
        if attr.kind == AttributeKind.NOMINAL:
            seen = [str(c) for c in pd.unique(column)]
            categories = tuple(seen + [c for c in attr.categories if c not in seen])
        else:
            categories = attr.categories

        encoded = replace(attr, categories=categories, encoded=True)
        codes = column.map(encoded.code_map())
        if codes.isna().any():
            bad = column[codes.isna()].iloc[0]
            raise DatasetError(f"Value '{bad}' of '{attr.name}' is not a declared category")

        frame[attr.name] = codes.astype(int)
        attributes.append(encoded)

    return Dataset(dataset.schema.with_attributes(attributes), frame)


def decode_nominals(dataset: Dataset) -> Dataset:
    """Map integer codes back to category labels (inverse of encode_nominals)"""
    frame = dataset.frame.copy()
    attributes = []

    for attr in dataset.schema.attributes:
        if not (attr.is_nominal and attr.encoded):
            attributes.append(attr)
            continue

        labels = {code: cat for cat, code in attr.code_map().items()}
        codes = np.rint(frame[attr.name].to_numpy(dtype=float)).astype(int)
        try:
            frame[attr.name] = pd.Series([labels[c] for c in codes],
                                         index=frame.index, dtype=object)
        except KeyError as e:
            raise DatasetError(f"Code {e} of '{attr.name}' has no category")
        attributes.append(replace(attr, encoded=False))

    return Dataset(dataset.schema.with_attributes(attributes), frame)
