"""
Deterministic, platform-independent random numbers (SplitMix64).

SplitMix64 is counter based: the i-th output of a stream with seed s is

    z = (s + i * 0x9E3779B97F4A7C15) mod 2**64          (i = 1, 2, ...)
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    out = z ^ (z >> 31)

so any block of outputs can be computed without stepping through the ones
before it. Independent sub-streams are obtained with `derive_seed`, which feeds
(seed, key) through the same mixer; a forest's tree t uses
derive_seed(master_seed, STREAM_FOREST, t).

Derived quantities:
- random(): (out >> 11) * 2**-53, uniform on [0, 1)
- integers(high): floor(random() * high)
- permutation(n): stable argsort of n raw outputs
"""

from typing import Union

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# Stream identifiers for derive_seed
STREAM_RELIEFF = 1
STREAM_FOLDS = 2
STREAM_FOREST = 3
STREAM_SYNTH_CLASS = 4
STREAM_SYNTH_ATTRIBUTE = 5
STREAM_SYNTH_SUPPORT = 6
STREAM_SYNTH_MISSING = 7


def _mix_int(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def _mix_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def derive_seed(seed: int, *keys: int) -> int:
    """Seed of the sub-stream addressed by `keys` under `seed`."""
    z = int(seed) & MASK64
    for key in keys:
        z = _mix_int((z + (int(key) + 1) * GOLDEN_GAMMA) & MASK64)
    return z


class RandomSource:
    """SplitMix64 stream with a few vectorised helpers"""

    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64
        self.counter = 0

    def next_uint64(self, size: int) -> np.ndarray:
        steps = np.arange(self.counter + 1, self.counter + size + 1, dtype=np.uint64)
        self.counter += size
        return _mix_array(np.uint64(self.seed) + steps * np.uint64(GOLDEN_GAMMA))

    def random(self, size: int) -> np.ndarray:
        return (self.next_uint64(size) >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)

    def integers(self, high: int, size: int) -> np.ndarray:
        if high < 1:
            raise ValueError("high must be >= 1")
        values = np.floor(self.random(size) * high).astype(np.int64)
        return np.minimum(values, high - 1)

    def permutation(self, n: int) -> np.ndarray:
        return np.argsort(self.next_uint64(n), kind="stable")

    def sample_without_replacement(self, population: Union[np.ndarray, list], k: int) -> np.ndarray:
        population = np.asarray(population)
        return population[self.permutation(population.size)[:k]]
