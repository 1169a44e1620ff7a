"""Desk-scale self checks behind the ``selftest`` CLI command.

Runs the oracle-equivalence and invariant suites at sizes small enough to
finish in seconds (``--quick``) or a couple of minutes (full), returning a
list of failure descriptions (empty on a correct build).
"""
from __future__ import annotations

import math

from . import birge, count4, count5, listing, oracle, range2d, recipes, segtree
from .perm import Pattern, all_patterns, ingest
from .rng import random_permutation
from .structures import Workspace


def run_selftest(quick: bool = True) -> list[str]:
    failures: list[str] = []

    def check(cond: bool, msg: str) -> None:
        if not cond:
            failures.append(msg)

    # Birge sandwich on step sequences (the exact worst case)
    for n in (10, 200):
        for eps in (0.5, 0.1):
            sched = birge.build_schedule(n, eps)
            check(int(sched.weights.sum()) == n, f"schedule covers n={n}")
            for r in (1, n // 2, n):
                x = [1.0] * r + [0.0] * (n - r)
                lo, hi = birge.sandwich_bounds(sched, x)
                check(lo <= r <= hi and lo >= r / (1 + eps) - 1e-9,
                      f"birge sandwich n={n} eps={eps} r={r}")

    # segment tree vs naive scan
    p = random_permutation(128, 7)
    t = segtree.build(p)
    vals = p.values
    import itertools

    for (i, j, a, b) in itertools.islice(
            itertools.product((1, 17, 64), (80, 128), (1, 30), (77, 128)), 0, None):
        naive = [x for x in range(i, j + 1) if a <= vals[x - 1] <= b]
        check(segtree.count_rect(t, i, j, a, b) == len(naive), f"count_rect {(i, j, a, b)}")
        if naive:
            check(segtree.select_by_location(t, i, j, a, b, 1) == naive[0],
                  f"select_by_location {(i, j, a, b)}")

    # 12-range accuracy and exactness
    p = random_permutation(160, 9)
    t2 = range2d.build_2d(p)
    brute = 0
    for x in range(1, 81):
        for y in range(x + 1, 81):
            if vals_ok(p, x, y):
                brute += 1
    r = range2d.Rect(1, 80, 1, 160)
    check(range2d.approx_12_in_rect(t2, r, None) == brute, "exact 12 rect")
    ap = range2d.approx_12_in_rect(t2, r, 0.1)
    check(brute / 1.1 - 1e-9 <= ap <= brute + 1e-9, "approx 12 rect")

    # counting engines vs oracle
    sizes = (12, 20) if quick else (12, 20, 32, 44)
    seeds = (3,) if quick else (3, 4, 5)
    for n in sizes:
        for seed in seeds:
            p = random_permutation(n, seed)
            truth4 = oracle.oracle_count_all(p, 4)
            for sigma in all_patterns(4):
                got = count4.count4(p, sigma, None)
                check(got == truth4[sigma], f"count4 exact {sigma} n={n} seed={seed}")
            truth5 = oracle.oracle_count_all(p, 5)
            pats5 = all_patterns(5) if not quick else all_patterns(5)[::10]
            for sigma in pats5:
                got = count5.count5(p, sigma, None)
                check(got == truth5[sigma], f"count5 exact {sigma} n={n} seed={seed}")

    # listing vs oracle
    p = random_permutation(16, 11)
    for sigma in (Pattern.parse("2413"), Pattern.parse("24135"), Pattern.parse("13524")):
        got, stats = listing.list_copies_stats(p, sigma, None)
        want = oracle.oracle_enumerate(p, sigma)
        check(set(got) == want and len(got) == len(set(got)), f"listing {sigma}")
        check(stats.abandoned <= 5 * len(got) + p.n, f"listing accounting {sigma}")

    # recipe table validity
    table = recipes.load_default_table()
    check(len(table) == 120 * 16, "table coverage")
    for key, entry in table.items():
        if isinstance(entry, recipes.Recipe):
            ok, reason = recipes.check_recipe(entry)
            check(ok, f"recipe {key}: {reason}")

    # closed forms
    ident = ingest(list(range(1, 11)))
    check(count4.count4(ident, Pattern.parse("1234"), None) == math.comb(10, 4), "C(10,4)")
    check(count5.count5(ident, Pattern.parse("12345"), None) == math.comb(10, 5), "C(10,5)")
    return failures


def vals_ok(p, x, y) -> bool:
    return p.values[x - 1] < p.values[y - 1]
