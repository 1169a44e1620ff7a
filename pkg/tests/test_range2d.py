"""12/21 range structure: exactness, accuracy, listing, node invariants."""
import math
import random

import pytest

from patcount import range2d as R2
from patcount.errors import NotDisjoint
from patcount.perm import ingest

from conftest import brute_12_in_rect, brute_21_in_rect, rect_points, shuffled


def test_build_trivial():
    t = R2.build_2d(ingest([1]))
    assert t.num_inner_nodes() == 1
    assert t.inner_node_count12(0) == 0
    t = R2.build_2d(ingest(range(1, 9)))
    root_counts = [t.inner_node_count12(w) for w in range(t.num_inner_nodes())
                   if t.inner_node_rect(w) == R2.Rect(1, 8, 1, 8)]
    assert 28 in root_counts  # identity root: C(8,2)


def test_per_node_counts_and_replication():
    rng = random.Random(21)
    p = shuffled(300, rng)
    t = R2.build_2d(p)
    total_stored = 0
    log2nt = math.ceil(math.log2(t.ws.main.nt))
    for w in range(t.num_inner_nodes()):
        pts = t.inner_node_points(w)
        total_stored += len(pts)
        c = sum(1 for a in pts for b in pts if a[0] < b[0] and a[1] < b[1])
        assert c == t.inner_node_count12(w)
        # augmentation: exactly the points with a dominator inside the node
        want = sorted((x for x, y in pts
                       if any(x2 > x and y2 > y for x2, y2 in pts)),
                      key=lambda x: p.values[x - 1])
        assert t.inner_node_aug(w) == want
    # replication bound: each point in O(log^2) node lists (documented c = 1)
    assert total_stored <= p.n * (log2nt + 1) ** 2


def test_exact_mode_equals_brute():
    rng = random.Random(22)
    for n in (1, 2, 17, 130):
        p = shuffled(n, rng)
        t = R2.build_2d(p)
        for _ in range(80):
            x1 = rng.randrange(1, n + 1)
            x2 = rng.randrange(x1, n + 1)
            y1 = rng.randrange(1, n + 1)
            y2 = rng.randrange(y1, n + 1)
            r = R2.Rect(x1, x2, y1, y2)
            assert R2.approx_12_in_rect(t, r, None) == brute_12_in_rect(p, x1, x2, y1, y2)
            assert R2.approx_21_in_rect(t, r, None) == brute_21_in_rect(p, x1, x2, y1, y2)


def test_approx_accuracy_and_zero_soundness():
    rng = random.Random(23)
    p = shuffled(250, rng)
    t = R2.build_2d(p)
    for _ in range(120):
        x1 = rng.randrange(1, 251)
        x2 = rng.randrange(x1, 251)
        y1 = rng.randrange(1, 251)
        y2 = rng.randrange(y1, 251)
        r = R2.Rect(x1, x2, y1, y2)
        want = brute_12_in_rect(p, x1, x2, y1, y2)
        for eps in (0.3, 0.1):
            got = R2.approx_12_in_rect(t, r, eps)
            assert want / (1 + eps) - 1e-9 <= got <= want + 1e-9
            assert (got == 0) == (want == 0)


def test_monotone_containment_exact():
    rng = random.Random(24)
    p = shuffled(120, rng)
    t = R2.build_2d(p)
    inner = R2.Rect(20, 70, 30, 90)
    outer = R2.Rect(10, 90, 10, 110)
    assert R2.approx_12_in_rect(t, inner, None) <= R2.approx_12_in_rect(t, outer, None)


def test_whole_grid_identities():
    n = 64
    ident = ingest(range(1, n + 1))
    t = R2.build_2d(ident)
    whole = R2.Rect(1, n, 1, n)
    assert R2.approx_12_in_rect(t, whole, None) == math.comb(n, 2)
    assert R2.approx_21_in_rect(t, whole, None) == 0.0
    for eps in (0.3, 0.1):
        got = R2.approx_12_in_rect(t, whole, eps)
        assert math.comb(n, 2) / (1 + eps) <= got <= math.comb(n, 2)
    dec = ingest(range(n, 0, -1))
    t2 = R2.build_2d(dec)
    assert R2.approx_12_in_rect(t2, whole, None) == 0.0
    assert R2.approx_12_in_rect(t2, whole, 0.3) == 0.0
    assert R2.approx_21_in_rect(t2, whole, 0.1) <= math.comb(n, 2)
    assert R2.approx_21_in_rect(t2, whole, 0.1) >= math.comb(n, 2) / 1.1


def test_clamping_and_empty():
    p = ingest([2, 1, 3])
    t = R2.build_2d(p)
    assert R2.approx_12_in_rect(t, R2.Rect(1, 50, 1, 50), None) == 2.0
    assert R2.approx_12_in_rect(t, R2.Rect(3, 2, 1, 3), 0.1) == 0.0


def test_listing_matches_brute():
    rng = random.Random(25)
    for n in (4, 40, 160):
        p = shuffled(n, rng)
        t = R2.build_2d(p)
        for _ in range(40):
            x1 = rng.randrange(1, n + 1)
            x2 = rng.randrange(x1, n + 1)
            y1 = rng.randrange(1, n + 1)
            y2 = rng.randrange(y1, n + 1)
            got = R2.list_12_in_rect(t, R2.Rect(x1, x2, y1, y2))
            pts = rect_points(p, x1, x2, y1, y2)
            want = {(a, b) for a, ya in pts for b, yb in pts if a < b and ya < yb}
            assert len(got) == len(set(got))
            assert set(got) == want
            k = rng.randrange(0, len(want) + 1)
            assert R2.list_12_in_rect(t, R2.Rect(x1, x2, y1, y2), k) == got[:k]


def test_listing_trivial():
    dec = ingest(range(10, 0, -1))
    t = R2.build_2d(dec)
    assert R2.list_12_in_rect(t, R2.Rect(1, 10, 1, 10)) == []
    ident = ingest(range(1, 5))
    t = R2.build_2d(ident)
    assert len(R2.list_12_in_rect(t, R2.Rect(1, 4, 1, 4), 100)) == 6


def test_cross_rect_cases():
    rng = random.Random(26)
    p = shuffled(64, rng)
    t = R2.build_2d(p)
    nodes = range(t.num_inner_nodes())
    pairs_checked = 0
    for w1 in nodes:
        r1 = t.inner_node_rect(w1)
        for w2 in nodes:
            if w2 == w1:
                continue
            r2 = t.inner_node_rect(w2)
            disjoint_x = r1.x_hi < r2.x_lo or r2.x_hi < r1.x_lo
            same_x = (r1.x_lo, r1.x_hi) == (r2.x_lo, r2.x_hi)
            disjoint_y = r1.y_hi < r2.y_lo or r2.y_hi < r1.y_lo
            if not (disjoint_x or (same_x and disjoint_y)):
                continue
            pts1 = t.inner_node_points(w1)
            pts2 = t.inner_node_points(w2)
            want = sum(1 for a in pts1 for b in pts2 if a[0] < b[0] and a[1] < b[1])
            got = R2.cross_rect_12(t, w1, w2, None)
            assert got == want, (r1, r2)
            ap = R2.cross_rect_12(t, w1, w2, 0.2)
            assert want / 1.2 - 1e-9 <= ap <= want + 1e-9
            pairs_checked += 1
            if pairs_checked > 4000:
                return


def test_cross_rect_not_disjoint():
    p = ingest(range(1, 17))
    t = R2.build_2d(p)
    # a node and its child overlap
    child_of = {}
    tr = t.ws.main
    i_lo, i_hi = tr.inner[9], tr.inner[10]
    for w in range(t.num_inner_nodes()):
        if int(i_lo[w]) >= 0:
            child_of[w] = int(i_lo[w])
    w, c = next(iter(child_of.items()))
    with pytest.raises(NotDisjoint):
        R2.cross_rect_12(t, w, c, 0.1)
