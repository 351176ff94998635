"""
Shared fixtures for the RareLens test suite
"""

from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from rarelens.models import Attribute, AttributeKind, Dataset, PredictionBatch, Schema
from rarelens.relevance import ControlPointSet
from rarelens.rng import RngStream


# Ten test cases with two models of equal MSE but opposite error placement
TWIN_TRUE = [2.70, 3.20, 3.50, 4.10, 4.50, 4.70, 5.20, 5.70, 9.20, 17.30]
TWIN_PHI = [0.00, 0.00, 0.00, 0.00, 0.00, 0.02, 0.57, 1.00, 1.00, 1.00]
TWIN_M1 = [2.66, 3.14, 3.40, 3.80, 4.00, 3.80, 4.10, 4.40, 7.70, 15.50]
TWIN_M2 = [0.90, 1.70, 2.20, 3.00, 3.60, 4.20, 4.90, 5.60, 9.14, 17.26]


@pytest.fixture
def twin_models():
    """(phi, M1 batch, M2 batch)"""
    return (np.array(TWIN_PHI),
            PredictionBatch(np.array(TWIN_TRUE), np.array(TWIN_M1)),
            PredictionBatch(np.array(TWIN_TRUE), np.array(TWIN_M2)))


@pytest.fixture
def no2_points():
    return ControlPointSet.from_triples([(1.1, 0, 0), (3.7, 0, 0), (5.0, 1, 0)])


@pytest.fixture
def rng():
    return RngStream(seed=42)


def make_dataset(targets, nominal: bool = True, seed: int = 0) -> Dataset:
    """Dataset with a numeric x1 tracking the target, a noise column and a colour"""
    targets = np.asarray(targets, dtype=float)
    gen = np.random.default_rng(seed)
    n = targets.size
    columns = {
        'x1': targets * 0.5 + gen.normal(0, 0.1, n),
        'x2': gen.uniform(0, 10, n),
    }
    attributes = [Attribute('x1'), Attribute('x2')]
    if nominal:
        colours = np.array(['red', 'green', 'blue'])
        columns['colour'] = colours[gen.integers(0, 3, n)]
        attributes.append(Attribute('colour', AttributeKind.NOMINAL, ('red', 'green', 'blue')))
    columns['y'] = targets
    schema = Schema(tuple(attributes), 'y')
    return Dataset(schema, pd.DataFrame(columns))


def step_relevance(cut: float):
    """Relevance 1 from `cut` upward, 0 below"""
    return lambda y: (np.asarray(y, dtype=float) >= cut).astype(float)


@pytest.fixture
def skewed_targets():
    """56 normal values plus a heavy upper tail"""
    gen = np.random.default_rng(3)
    return np.concatenate([gen.normal(10, 2, 56), [25.0, 28.0, 30.0, 33.0]])


@pytest.fixture
def balanced_bins_dataset():
    """One normal run of 100 rows (y < 100) and one rare run of 20 rows"""
    return make_dataset(np.arange(120, dtype=float))


@pytest.fixture
def mixed_csv(tmp_path: Path, skewed_targets) -> Path:
    dataset = make_dataset(skewed_targets, seed=5)
    path = tmp_path / "mixed.csv"
    dataset.frame.to_csv(path, index=False)
    return path
