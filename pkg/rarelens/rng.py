"""
Seeded random streams

Every randomized operation takes an RngStream and builds its own numpy
Generator from it, so results are pure functions of (inputs, stream).
"""

import hashlib
from dataclasses import dataclass

import numpy as np


DEFAULT_SEED = 0


@dataclass(frozen=True)
class RngStream:
    """A (seed, stream id) pair naming one reproducible draw sequence"""
    seed: int = DEFAULT_SEED
    stream: int = 0

    def __post_init__(self):
        for name in ('seed', 'stream'):
            value = getattr(self, name)
            if not 0 <= value < 2 ** 64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {value}")

    def generator(self) -> np.random.Generator:
        """Fresh PCG64 generator; identical streams give identical draws"""
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(seq))

    def derive(self, *coords) -> 'RngStream':
        """
        Child stream for a task, keyed by stable hashing of its coordinates
        (e.g. task name, dataset, repeat, fold).
        """
        key = "/".join([str(self.stream)] + [str(c) for c in coords]).encode("utf-8")
        digest = hashlib.blake2b(key, digest_size=8).digest()
        return RngStream(self.seed, int.from_bytes(digest, "big"))
