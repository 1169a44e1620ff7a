"""Rectangle point counting and rank selection over a permutation.

Two mirrored merge trees: one over the points (i, p_i), one over the
transposed points (p_i, i) (i.e. the inverse permutation).  Positions are
padded to the next power of two; absent leaves hold no points.  Every query
runs in O(log^2 n): O(log n) canonical nodes, each binary-searched.

API surface is 1-indexed and inclusive on both axes, matching the package
convention.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import InvalidRange, RankOutOfRange
from .perm import Permutation


@dataclass
class SegTree1D:
    """Immutable after build; all queries are read-only."""

    n: int
    nt: int  # padded leaf count, 2^ceil(log2 n)
    toff: np.ndarray
    tlen: np.ndarray
    tvals: np.ndarray
    tpos: np.ndarray
    # mirrored tree (built on the inverse permutation)
    moff: np.ndarray = field(repr=False, default=None)
    mlen: np.ndarray = field(repr=False, default=None)
    mvals: np.ndarray = field(repr=False, default=None)
    mpos: np.ndarray = field(repr=False, default=None)

    def arrays(self):
        """Flat arrays handed to kernels: (toff, tlen, tvals, nt) x 2 trees."""
        return (self.toff, self.tlen, self.tvals, self.moff, self.mlen, self.mvals, self.nt)


def build(p: Permutation) -> SegTree1D:
    """Build both trees eagerly; O(n log^2 n) time, O(n log n) space."""
    vals = p.as_array0()
    nt = K.padded_size(max(p.n, 1))
    toff, tlen, tvals, tpos = K.build_tree(vals, nt)
    inv = np.empty_like(vals)
    inv[vals] = np.arange(p.n, dtype=np.int64)
    moff, mlen, mvals, mpos = K.build_tree(inv, nt)
    return SegTree1D(p.n, nt, toff, tlen, tvals, tpos, moff, mlen, mvals, mpos)


def _check_ranges(t: SegTree1D, i: int, j: int, a: int, b: int) -> None:
    if not (1 <= i <= j <= t.n) or not (1 <= a <= b <= t.n):
        raise InvalidRange(f"need 1 <= i <= j <= n and 1 <= a <= b <= n, got {(i, j, a, b)} with n={t.n}")


def count_rect(t: SegTree1D, i: int, j: int, a: int, b: int) -> int:
    """Exact |{x : i <= x <= j, a <= p(x) <= b}| (all bounds 1-based inclusive)."""
    _check_ranges(t, i, j, a, b)
    return int(K.count_rect(t.toff, t.tlen, t.tvals, t.nt, i - 1, j - 1, a - 1, b - 1))


def select_by_location(t: SegTree1D, i: int, j: int, a: int, b: int, ell: int) -> int:
    """Position of the ell-th leftmost point in the rectangle, 1 <= ell <= count."""
    _check_ranges(t, i, j, a, b)
    pos = K.select_by_location(t.toff, t.tlen, t.tvals, t.nt, i - 1, j - 1, a - 1, b - 1, ell)
    if pos < 0:
        raise RankOutOfRange(f"rank {ell} exceeds the rectangle count")
    return int(pos) + 1


def select_by_value(t: SegTree1D, i: int, j: int, a: int, b: int, ell: int) -> int:
    """ell-th largest value among points in the rectangle, per the mirrored tree."""
    _check_ranges(t, i, j, a, b)
    cnt = K.count_rect(t.toff, t.tlen, t.tvals, t.nt, i - 1, j - 1, a - 1, b - 1)
    if not (1 <= ell <= cnt):
        raise RankOutOfRange(f"rank {ell} exceeds the rectangle count {cnt}")
    # ell-th largest = (cnt-ell+1)-th smallest; values are mirror-tree positions
    v = K.select_by_location(t.moff, t.mlen, t.mvals, t.nt, a - 1, b - 1, i - 1, j - 1, cnt - ell + 1)
    return int(v) + 1


def select_by_value_smallest(t: SegTree1D, i: int, j: int, a: int, b: int, ell: int) -> int:
    """ell-th smallest value in the rectangle (mirror of select_by_value)."""
    _check_ranges(t, i, j, a, b)
    cnt = K.count_rect(t.toff, t.tlen, t.tvals, t.nt, i - 1, j - 1, a - 1, b - 1)
    if not (1 <= ell <= cnt):
        raise RankOutOfRange(f"rank {ell} exceeds the rectangle count {cnt}")
    v = K.select_by_location(t.moff, t.mlen, t.mvals, t.nt, a - 1, b - 1, i - 1, j - 1, ell)
    return int(v) + 1


def nodes_touched(t: SegTree1D, i: int, j: int, a: int, b: int) -> int:
    """Canonical nodes visited by a count query; <= 2 ceil(log2 nt)."""
    _check_ranges(t, i, j, a, b)
    return int(K.count_rect_nodes(t.toff, t.tlen, t.tvals, t.nt, i - 1, j - 1, a - 1, b - 1))


def node_lists(t: SegTree1D) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """(lo, hi) 1-based x-interval -> [(value, position)] per node; test hook."""
    out = {}
    for node in range(1, 2 * t.nt):
        # heap node range
        lo, hi = node, node
        while lo < t.nt:
            lo *= 2
            hi = hi * 2 + 1
        lo -= t.nt
        hi -= t.nt
        s, e = int(t.toff[node]), int(t.toff[node] + t.tlen[node])
        if e > s:
            out[(lo + 1, hi + 1)] = [(int(t.tvals[q]) + 1, int(t.tpos[q]) + 1) for q in range(s, e)]
    return out
