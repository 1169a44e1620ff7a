"""Brute-force oracles and exact small-k counting.

The enumeration oracle is the ground truth for every approximate engine in
the package: O(k n^k), usable at desk scale only.  ``exact_count_small``
covers k <= 3 in O(n log n) via per-position dominance statistics.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from . import _kernels as K
from .errors import PatternTooLong
from .perm import Pattern, Permutation, all_patterns, pattern_rank


def oracle_count(p: Permutation, sigma: Pattern) -> int:
    """Exact number of sigma-copies in p by exhaustive enumeration."""
    if sigma.k > p.n:
        return 0
    counts = K.oracle_count_all(p.as_array0(), sigma.k)
    return int(counts[pattern_rank(sigma)])


def oracle_count_all(p: Permutation, k: int) -> dict[Pattern, int]:
    """Counts of every k-pattern from one enumeration pass."""
    counts = K.oracle_count_all(p.as_array0(), k)
    return {sig: int(counts[pattern_rank(sig)]) for sig in all_patterns(k)}


def matches(values: tuple[int, ...], sigma: Pattern) -> bool:
    """Whether a value tuple is ordered like sigma."""
    k = sigma.k
    for a in range(k):
        for b in range(a + 1, k):
            if (values[a] < values[b]) != (sigma.order[a] < sigma.order[b]):
                return False
    return True


def oracle_enumerate(p: Permutation, sigma: Pattern) -> set[tuple[int, ...]]:
    """The exact set of copies, as 1-based position tuples."""
    vals = p.values
    out = set()
    for idx in combinations(range(p.n), sigma.k):
        if matches(tuple(vals[i] for i in idx), sigma):
            out.add(tuple(i + 1 for i in idx))
    return out


def exact_count_small(p: Permutation, sigma: Pattern) -> int:
    """Exact count for k <= 3 in near-linear time."""
    if sigma.k > 3:
        raise PatternTooLong(f"exact_count_small handles k <= 3, got k={sigma.k}")
    arr = p.as_array0()
    if sigma.k == 1:
        return p.n
    if sigma.k == 2:
        inv = int(K.count_inversions(arr)) if p.n else 0
        return inv if sigma.order == (2, 1) else p.n * (p.n - 1) // 2 - inv
    counts = K.count_k3_all(arr)
    return int(counts[pattern_rank(sigma)])


def exact_count_small_all(p: Permutation, k: int) -> dict[Pattern, int]:
    """All k-pattern counts for k <= 3, near-linear time."""
    return {sig: exact_count_small(p, sig) for sig in all_patterns(k)}


def oracle_enumerate_fast(p: Permutation, sigma: Pattern) -> set[tuple[int, ...]]:
    """Kernel-backed enumeration for k in {4, 5}; equals oracle_enumerate."""
    if sigma.k not in (4, 5):
        return oracle_enumerate(p, sigma)
    total = oracle_count(p, sigma)
    out = np.empty((max(total, 1), sigma.k), dtype=np.int64)
    pat = np.asarray(sigma.order, dtype=np.int64)
    cnt = K.oracle_enumerate_pattern(p.as_array0(), pat, out)
    assert cnt == total
    return {tuple(int(x) + 1 for x in out[q]) for q in range(cnt)}
