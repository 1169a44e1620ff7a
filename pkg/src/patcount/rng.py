"""Portable deterministic random permutations.

Uses the SplitMix64 generator (Steele, Lea, Flood 2014; the reference stream
of Vigna's xoshiro page) so that other implementations can reproduce inputs
bit-exactly: state advances by the golden-gamma constant and the output runs
two xor-shift multiplies.  Test vector: seed 0 yields
0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F, ...

A permutation is drawn by a Fisher-Yates shuffle of [1..n] from the low-bias
index rule j = next() % (i + 1) (the modulo bias is irrelevant for test
inputs and keeps the recipe trivially portable).
"""
from __future__ import annotations

from .perm import Permutation

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK


def random_permutation(n: int, seed: int) -> Permutation:
    """Fisher-Yates over [1..n] driven by SplitMix64(seed)."""
    rng = SplitMix64(seed)
    vals = list(range(1, n + 1))
    for i in range(n - 1, 0, -1):
        j = rng.next() % (i + 1)
        vals[i], vals[j] = vals[j], vals[i]
    return Permutation(tuple(vals))
