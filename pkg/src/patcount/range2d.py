"""Approximate 12-copy and 21-copy counts inside axis-parallel rectangles.

A sparse two-level structure: an outer tree over positions, and per outer
node a dyadic value tree of its points, with empty vertices never created.
Every inner node stores its points twice (by position and, as a slice of the
outer list, by value), its exact number of 12-copies (computed by merge
counting during the build), and the list of points having a dominator inside
the node (the listing augmentation).

A query rectangle decomposes into O(log^2 n) canonical node point sets; the
answer is the sum of stored within-node counts plus cross contributions over
all ordered pairs of cover entries.  Cross terms are disjoint, so each uses
the full query epsilon and the total lands in [T/(1+eps), T].

21-counts are answered on the structure of the x-reversed permutation with
the rectangle mirrored, never by subtracting approximations.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import InvalidEpsilon, NotDisjoint
from .perm import Permutation
from .structures import Workspace


@dataclass(frozen=True)
class Rect:
    """Inclusive 1-based rectangle; may be clamped or empty."""

    x_lo: int
    x_hi: int
    y_lo: int
    y_hi: int

    @property
    def empty(self) -> bool:
        return self.x_lo > self.x_hi or self.y_lo > self.y_hi


class RangeTree2D:
    """Public handle: workspace plus cached inner trees on both mirrors."""

    def __init__(self, ws: Workspace):
        self.ws = ws
        self.n = ws.n
        # force builds so query paths are allocation-free afterwards
        ws.main.inner
        ws.rev.inner

    # --- inspection helpers (tests, enumeration of separator pairs) ---

    def num_inner_nodes(self) -> int:
        return int(self.ws.main.inner[14])

    def inner_node_points(self, w: int) -> list[tuple[int, int]]:
        """1-based (position, value) points of inner node w, by value order."""
        tr = self.ws.main
        (iroot, i_ylo, i_yhi, i_yoff, i_ylen, *_rest) = tr.inner
        s, ln = int(i_yoff[w]), int(i_ylen[w])
        return [(int(tr.tpos[q]) + 1, int(tr.tvals[q]) + 1) for q in range(s, s + ln)]

    def inner_node_count12(self, w: int) -> int:
        return int(self.ws.main.inner[6][w])

    def inner_node_rect(self, w: int) -> Rect:
        tr = self.ws.main
        (iroot, i_ylo, i_yhi, *_rest) = tr.inner
        i_outer = tr.inner[11]
        t = int(i_outer[w])
        return Rect(int(tr.olo[t]) + 1, int(tr.ohi[t]) + 1, int(i_ylo[w]) + 1, int(i_yhi[w]) + 1)

    def inner_node_aug(self, w: int) -> list[int]:
        """1-based positions of points with a dominator inside node w."""
        tr = self.ws.main
        aug_off, aug_len, augbuf = tr.inner[7], tr.inner[8], tr.inner[13]
        s, ln = int(aug_off[w]), int(aug_len[w])
        return [int(augbuf[q]) + 1 for q in range(s, s + ln)]


def build_2d(p: Permutation, epsilon: float | None = None) -> RangeTree2D:
    """Build the structure; per-node 12-counts are exact, so epsilon only
    matters at query time (the argument is accepted for interface parity)."""
    if epsilon is not None and not (0.0 < epsilon < 1.0):
        raise InvalidEpsilon(f"epsilon must be in (0,1), got {epsilon}")
    return RangeTree2D(Workspace(p))


def _clamp0(t: RangeTree2D, r: Rect) -> tuple[int, int, int, int]:
    return (max(r.x_lo, 1) - 1, min(r.x_hi, t.n) - 1, max(r.y_lo, 1) - 1, min(r.y_hi, t.n) - 1)


def approx_12_in_rect(t: RangeTree2D, r: Rect, epsilon: float | None) -> float:
    """(1+eps)-approximate 12-count inside r; epsilon=None means exact mode.

    Exact mode replaces every cross-pair probe schedule with full summation
    and returns the true count (as a float with integral value).
    """
    exact = epsilon is None
    if not exact and not (0.0 < epsilon < 1.0):
        raise InvalidEpsilon(f"epsilon must be in (0,1), got {epsilon}")
    x1, x2, y1, y2 = _clamp0(t, r)
    if x1 > x2 or y1 > y2:
        return 0.0
    eps = 0.5 if exact else float(epsilon)
    return float(K.approx12_rect(*t.ws.main.rect_args(), x1, x2, y1, y2, eps, exact))


def approx_21_in_rect(t: RangeTree2D, r: Rect, epsilon: float | None) -> float:
    """21-counts, answered as 12-counts on the x-reversed structure."""
    exact = epsilon is None
    if not exact and not (0.0 < epsilon < 1.0):
        raise InvalidEpsilon(f"epsilon must be in (0,1), got {epsilon}")
    x1, x2, y1, y2 = _clamp0(t, r)
    if x1 > x2 or y1 > y2:
        return 0.0
    n = t.n
    rx1, rx2 = n - 1 - x2, n - 1 - x1
    eps = 0.5 if exact else float(epsilon)
    return float(K.approx12_rect(*t.ws.rev.rect_args(), rx1, rx2, y1, y2, eps, exact))


def list_12_in_rect(t: RangeTree2D, r: Rect, limit: int | None = None) -> list[tuple[int, int]]:
    """Up to ``limit`` distinct 12-pairs inside r, as 1-based position pairs."""
    x1, x2, y1, y2 = _clamp0(t, r)
    if x1 > x2 or y1 > y2 or (limit is not None and limit <= 0):
        return []
    total = int(round(approx_12_in_rect(t, r, None)))
    want = total if limit is None else min(limit, total)
    if want == 0:
        return []
    out_u = np.empty(want, dtype=np.int64)
    out_v = np.empty(want, dtype=np.int64)
    emitted, _ab = K.list12_rect(*t.ws.main.list_args(), x1, x2, y1, y2, want, out_u, out_v)
    return [(int(out_u[q]) + 1, int(out_v[q]) + 1) for q in range(emitted)]


def cross_rect_12(t: RangeTree2D, w1: int, w2: int, epsilon: float | None) -> float:
    """12-pairs (u in node w1, v in node w2) across two disjoint inner nodes."""
    r1 = t.inner_node_rect(w1)
    r2 = t.inner_node_rect(w2)
    if w1 == w2 or not (r1.x_hi < r2.x_lo or r2.x_hi < r1.x_lo
                        or r1.y_hi < r2.y_lo or r2.y_hi < r1.y_lo):
        # same x-interval with disjoint value ranges is fine; true overlap is not
        if not (r1.x_lo == r2.x_lo and r1.x_hi == r2.x_hi
                and (r1.y_hi < r2.y_lo or r2.y_hi < r1.y_lo)) or w1 == w2:
            raise NotDisjoint(f"nodes {w1} and {w2} overlap")
    exact = epsilon is None
    eps = 0.5 if exact else float(epsilon)
    tr = t.ws.main
    i_yoff, i_ylen, i_xoff = tr.inner[3], tr.inner[4], tr.inner[5]
    same_x = r1.x_lo == r2.x_lo and r1.x_hi == r2.x_hi
    if same_x:
        if r2.y_lo > r1.y_hi:
            return float(K._cross_pairs_x(tr.inner[12], tr.tvals, tr.tpos,
                                          int(i_xoff[w1]), int(i_ylen[w1]),
                                          int(i_xoff[w2]), int(i_ylen[w2]), eps, exact))
        return 0.0
    if r1.x_hi < r2.x_lo:
        if r2.y_lo > r1.y_hi:
            return float(i_ylen[w1] * i_ylen[w2])
        if r2.y_hi < r1.y_lo:
            return 0.0
        return float(K._cross_pairs_y(tr.inner[12], tr.tvals, tr.tpos,
                                      int(i_yoff[w1]), int(i_ylen[w1]),
                                      int(i_yoff[w2]), int(i_ylen[w2]), eps, exact))
    return 0.0
