"""Shared test helpers: independent brute-force oracles and input generators.

The brute helpers here deliberately avoid the package's own counting paths
(plain Python scans and a Fenwick tree) so that oracle-equivalence tests pit
two independent implementations against each other.
"""
from __future__ import annotations

import random

import pytest

from patcount.perm import Permutation, ingest
from patcount.rng import random_permutation


def rand_perm(n: int, seed: int) -> Permutation:
    return random_permutation(n, seed)


def shuffled(n: int, rng: random.Random) -> Permutation:
    v = list(range(1, n + 1))
    rng.shuffle(v)
    return ingest(v)


def brute_count_12(points: list[tuple[int, int]]) -> int:
    """Increasing pairs among (x, y) points via a Fenwick tree, O(m log m)."""
    if not points:
        return 0
    pts = sorted(points)
    ys = sorted(y for _, y in pts)
    rank = {y: i + 1 for i, y in enumerate(ys)}
    fen = [0] * (len(ys) + 1)
    total = 0
    for _, y in pts:
        r = rank[y] - 1  # count strictly smaller ys seen so far
        i = r
        while i > 0:
            total += fen[i]
            i -= i & (-i)
        i = rank[y]
        while i <= len(ys):
            fen[i] += 1
            i += i & (-i)
    return total


def rect_points(p: Permutation, x1: int, x2: int, y1: int, y2: int) -> list[tuple[int, int]]:
    return [(x, p.values[x - 1]) for x in range(max(1, x1), min(p.n, x2) + 1)
            if y1 <= p.values[x - 1] <= y2]


def brute_12_in_rect(p: Permutation, x1, x2, y1, y2) -> int:
    return brute_count_12(rect_points(p, x1, x2, y1, y2))


def brute_21_in_rect(p: Permutation, x1, x2, y1, y2) -> int:
    pts = rect_points(p, x1, x2, y1, y2)
    m = len(pts)
    return m * (m - 1) // 2 - brute_count_12(pts)


@pytest.fixture(scope="session")
def warm_kernels():
    """Touch every jitted path once so timing-sensitive tests exclude compile."""
    from patcount import count4, count5, listing, range2d
    from patcount.perm import Pattern

    p = rand_perm(16, 123)
    for name in ("1324", "2413", "1234", "2143", "1243", "1342", "1423", "1432"):
        count4.count4(p, Pattern.parse(name), 0.3)
        count4.count4(p, Pattern.parse(name), None)
    count5.count5(p, Pattern.parse("24135"), 0.3)
    count5.count5(p, Pattern.parse("13524"), None)
    t = range2d.build_2d(p)
    range2d.approx_12_in_rect(t, range2d.Rect(1, 16, 1, 16), 0.3)
    range2d.list_12_in_rect(t, range2d.Rect(1, 16, 1, 16))
    listing.list_copies(p, Pattern.parse("24135"), 3)
    return True
