"""
Synthetic case generation: neighbour interpolation and Gaussian perturbation
"""

import logging

import numpy as np

from ..errors import SynthesisError
from .distance import DistanceSchema


log = logging.getLogger(__name__)


def per_seed_counts(total: int, n_seeds: int) -> np.ndarray:
    """Spread `total` new rows over seeds; the first seeds take the remainder"""
    counts = np.full(n_seeds, total // n_seeds, dtype=int)
    counts[:total % n_seeds] += 1
    return counts


def nearest_neighbours(distances: np.ndarray, index: int, k: int) -> np.ndarray:
    """k nearest rows to `index` given its distance row; ties go to the lower position"""
    order = np.argsort(distances, kind='stable')
    return order[order != index][:k]


def interpolate(seed_x: np.ndarray, seed_y: np.ndarray, nb_x: np.ndarray, nb_y: np.ndarray,
                schema: DistanceSchema, gen: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """
    New rows on the segments from seeds toward their neighbours.

    Numeric attributes move a uniform fraction of the way to the
    neighbour (one fraction per row); nominal attributes copy either
    parent at random. The target is the inverse-distance weighted mean
    of the parents' targets, or their plain mean when both distances
    are zero.
    """
    n = seed_x.shape[0]
    nominal = schema.nominal

    x = seed_x + gen.random(n)[:, None] * (nb_x - seed_x)
    if nominal.any():
        from_seed = gen.random((n, int(nominal.sum()))) < 0.5
        x[:, nominal] = np.where(from_seed, seed_x[:, nominal], nb_x[:, nominal])

    d1 = schema.rowwise(x, seed_x)
    d2 = schema.rowwise(x, nb_x)
    total = d1 + d2
    weighted = (d2 * seed_y + d1 * nb_y) / np.where(total > 0, total, 1.0)
    y = np.where(total > 0, weighted, (seed_y + nb_y) / 2)

    return x, y


def perturb(seed_x: np.ndarray, seed_y: np.ndarray, bin_x: np.ndarray, bin_y: np.ndarray,
            nominal: np.ndarray, amplitude: float,
            gen: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """
    Gaussian noise around seeds.

    Numeric attributes and the target get additive N(0, amplitude * sd)
    noise with sd the sample standard deviation within the bin (0 for a
    single row). Nominal attributes are redrawn with the bin's value
    frequencies. Zero amplitude returns exact copies.
    """
    x = np.array(seed_x, dtype=float, copy=True)
    y = np.array(seed_y, dtype=float, copy=True)
    n = x.shape[0]

    if amplitude == 0 or n == 0:
        return x, y

    numeric = ~nominal
    if len(bin_x) > 1:
        sd_x = bin_x[:, numeric].std(axis=0, ddof=1)
        sd_y = bin_y.std(ddof=1)
    else:
        sd_x = np.zeros(int(numeric.sum()))
        sd_y = 0.0

    x[:, numeric] += gen.standard_normal((n, int(numeric.sum()))) * amplitude * sd_x
    y += gen.standard_normal(n) * amplitude * sd_y

    for j in np.flatnonzero(nominal):
        values, counts = np.unique(bin_x[:, j], return_counts=True)
        x[:, j] = gen.choice(values, size=n, p=counts / counts.sum())

    return x, y


def gen_synth_cases(bin_x: np.ndarray, bin_y: np.ndarray, n_new: int, k: int,
                    schema: DistanceSchema,
                    gen: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """
    Interpolated synthetic rows for one rare bin.

    Every bin row seeds n_new // |B| cases (the first n_new % |B| seeds
    one more), each interpolated toward one of its k nearest bin
    neighbours picked at random. k is clamped to |B| - 1.

    Raises:
        SynthesisError: the bin has a single row
    """
    size = len(bin_x)
    if size < 2:
        raise SynthesisError("Cannot interpolate in a bin with a single row")

    if k > size - 1:
        log.warning("k=%d exceeds the %d neighbours available in a rare bin; using %d",
                    k, size - 1, size - 1)
        k = size - 1

    dist = schema.pairwise(bin_x, bin_x)
    counts = per_seed_counts(n_new, size)
    seeds, neighbours = [], []

    for i in np.flatnonzero(counts):
        nns = nearest_neighbours(dist[i], i, k)
        seeds.append(np.full(counts[i], i))
        neighbours.append(gen.choice(nns, size=counts[i]))

    if not seeds:
        return np.empty((0, bin_x.shape[1])), np.empty(0)

    seeds = np.concatenate(seeds)
    neighbours = np.concatenate(neighbours)
    return interpolate(bin_x[seeds], bin_y[seeds], bin_x[neighbours], bin_y[neighbours],
                       schema, gen)
