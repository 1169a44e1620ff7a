"""Listing pattern copies: t distinct copies in near-linear-plus-output time.

The counting engines partition copies into cells (anchor positions, bucket
cells, or separator-pair configurations).  The lister walks the same cells
and replaces every probe schedule with full enumeration in descending-count
order, abandoning a candidate prefix as soon as an exact check shows its
remaining count is zero; by monotonicity the first failing candidate ends its
loop.  Terminal 12/21 pairs are listed through the augmented range structure.

Work accounting: the ``abandoned`` counter increments (a) once per anchor
position that yields nothing, deduplicated by position, and (b) once per
monotone candidate loop that ends on a zero-count candidate under a
productive prefix, including the pair-listing loops inside the range
structure.  Cell- and configuration-level emptiness probes fix no candidate
and are not counted.  This mirrors the charging argument: at most one charge
per productive prefix plus at most n top-level misses, so
``abandoned <= 5 * emitted + n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import _kernels as K
from .errors import InvalidPattern
from .perm import Pattern, Permutation, canonicalize
from .recipes import (FactorRecipe, PAIR_12, PAIR_21, PAIR_XDOM, PAIR_YDOM,
                      ROLE_PAIR_LEAD, ROLE_PAIR_TAIL, ROLE_SINGLETON, ROLE_STEP, Step)
from .structures import Workspace

AXIS_POS = 0
AXIS_VAL = 1

# Hand chains for the k <= 4 engine representatives: (fixed element, steps),
# matching the counting engines cell for cell.  Rectangles come from the
# generic order-constraint caps; the bucket engine adds its bucket windows as
# base rectangles.
HAND_CHAINS: dict[str, tuple[int, tuple[Step, ...]]] = {
    "123": (2, (Step(1, ROLE_SINGLETON), Step(3, ROLE_SINGLETON))),
    "321": (2, (Step(1, ROLE_SINGLETON), Step(3, ROLE_SINGLETON))),
    "132": (3, (Step(1, ROLE_PAIR_LEAD, pair_kind=PAIR_YDOM), Step(2, ROLE_PAIR_TAIL))),
    "213": (1, (Step(2, ROLE_PAIR_LEAD, pair_kind=PAIR_YDOM), Step(3, ROLE_PAIR_TAIL))),
    "231": (3, (Step(1, ROLE_PAIR_LEAD, pair_kind=PAIR_YDOM), Step(2, ROLE_PAIR_TAIL))),
    "312": (1, (Step(2, ROLE_PAIR_LEAD, pair_kind=PAIR_YDOM), Step(3, ROLE_PAIR_TAIL))),
    "1324": (3, (Step(4, ROLE_STEP, AXIS_POS, False), Step(2, ROLE_STEP, AXIS_VAL, False),
                 Step(1, ROLE_SINGLETON))),
    "1342": (3, (Step(4, ROLE_STEP, AXIS_POS, True), Step(2, ROLE_STEP, AXIS_VAL, False),
                 Step(1, ROLE_SINGLETON))),
    "1423": (2, (Step(3, ROLE_STEP, AXIS_VAL, True), Step(4, ROLE_STEP, AXIS_POS, False),
                 Step(1, ROLE_SINGLETON))),
    "1432": (3, (Step(2, ROLE_STEP, AXIS_VAL, False), Step(4, ROLE_STEP, AXIS_POS, False),
                 Step(1, ROLE_SINGLETON))),
    "1234": (3, (Step(4, ROLE_SINGLETON), Step(1, ROLE_PAIR_LEAD, pair_kind=PAIR_12),
                 Step(2, ROLE_PAIR_TAIL))),
    "1243": (4, (Step(3, ROLE_STEP, AXIS_VAL, False), Step(1, ROLE_PAIR_LEAD, pair_kind=PAIR_12),
                 Step(2, ROLE_PAIR_TAIL))),
    "2143": (1, (Step(2, ROLE_STEP, AXIS_VAL, True), Step(4, ROLE_PAIR_LEAD, pair_kind=PAIR_21),
                 Step(3, ROLE_PAIR_TAIL))),
}


@dataclass
class ListStats:
    emitted: int = 0
    abandoned: int = 0
    barren_positions: set = field(default_factory=set)

    def abandon_position(self, pos: int) -> None:
        if pos not in self.barren_positions:
            self.barren_positions.add(pos)
            self.abandoned += 1


class _Full(Exception):
    """Internal signal: the requested number of copies has been emitted."""


class _Lister:
    """Chain enumerator over one prepared workspace (one pattern, one call)."""

    def __init__(self, ws: Workspace, pattern: str, t: int | None, stats: ListStats):
        self.ws = ws
        self.tr = ws.main
        self.pattern = pattern
        self.k = len(pattern)
        self.pos_of = {int(d): i + 1 for i, d in enumerate(pattern)}
        self.t = t
        self.stats = stats
        self.out: list[tuple[int, ...]] = []
        self.vals = self.tr.vals

    # --- exact probes -----------------------------------------------------

    def _cnt(self, r) -> int:
        x1, x2, y1, y2 = r
        return int(K.count_rect(self.tr.toff, self.tr.tlen, self.tr.tvals, self.tr.nt,
                                x1, x2, y1, y2))

    def _sel_pos(self, r, rank) -> int:
        x1, x2, y1, y2 = r
        return int(K.select_by_location(self.tr.toff, self.tr.tlen, self.tr.tvals,
                                        self.tr.nt, x1, x2, y1, y2, rank))

    def _sel_val(self, r, rank) -> int:
        x1, x2, y1, y2 = r
        return int(K.select_by_location(self.tr.moff, self.tr.mlen, self.tr.mvals,
                                        self.tr.nt, y1, y2, x1, x2, rank))

    def _exact12(self, r) -> int:
        x1, x2, y1, y2 = r
        if x1 > x2 or y1 > y2:
            return 0
        return int(round(K.approx12_rect(*self.tr.rect_args(), x1, x2, y1, y2, 0.5, True)))

    def _exact21(self, r) -> int:
        x1, x2, y1, y2 = r
        if x1 > x2 or y1 > y2:
            return 0
        rv = self.ws.rev
        n = self.ws.n
        return int(round(K.approx12_rect(*rv.rect_args(), n - 1 - x2, n - 1 - x1, y1, y2,
                                         0.5, True)))

    # --- rectangle caps -----------------------------------------------------

    def _capped(self, rects: dict, g: int, pt) -> dict:
        """Intersect rectangles with the half-planes of element g fixed at pt."""
        pg, vg = pt
        out = {}
        for e, (x1, x2, y1, y2) in rects.items():
            if e != g:
                if self.pos_of[e] < self.pos_of[g]:
                    x2 = min(x2, pg - 1)
                else:
                    x1 = max(x1, pg + 1)
                if e < g:
                    y2 = min(y2, vg - 1)
                else:
                    y1 = max(y1, vg + 1)
            out[e] = (x1, x2, y1, y2)
        return out

    # --- existence checks (exact, cheap maximal-chain descent) ---------------

    def _pair_exists(self, kind, e, u, rects) -> bool:
        if kind == PAIR_12:
            r = _isect(rects[e], rects[u])
            return self._exact12(r) > 0
        if kind == PAIR_21:
            r = _isect(rects[e], rects[u])
            return self._exact21(r) > 0
        if kind == PAIR_XDOM:
            a, b = (e, u) if self.pos_of[e] < self.pos_of[u] else (u, e)
            ra, rb = rects[a], rects[b]
            if self._cnt(ra) == 0:
                return False
            pa = self._sel_pos(ra, 1)
            return self._cnt((max(rb[0], pa + 1), rb[1], rb[2], rb[3])) > 0
        a, b = (e, u) if e < u else (u, e)
        ra, rb = rects[a], rects[b]
        if self._cnt(ra) == 0:
            return False
        va = self._sel_val(ra, 1)
        return self._cnt((rb[0], rb[1], max(rb[2], va + 1), rb[3])) > 0

    def _exists(self, steps, rects) -> bool:
        """At least one completion of the remaining chain?  Scans are probed
        at their first (largest-count) candidate only."""
        i = 0
        while i < len(steps):
            st = steps[i]
            if st.role == ROLE_SINGLETON:
                if self._cnt(rects[st.element]) == 0:
                    return False
                i += 1
            elif st.role == ROLE_PAIR_LEAD:
                if not self._pair_exists(st.pair_kind, st.element, steps[i + 1].element, rects):
                    return False
                i += 2
            elif st.role == ROLE_PAIR_TAIL:
                i += 1
            else:
                e = st.element
                if self._cnt(rects[e]) == 0:
                    return False
                pt = self._candidate(st, rects[e], 1)
                return self._exists(_drop(steps, i), self._capped(rects, e, pt))
        return True

    def _candidate(self, st: Step, r, rank_in_order: int):
        """rank_in_order-th candidate in the step's descending-count order."""
        n_cand = self._cnt(r)
        rank = rank_in_order if st.ascending else n_cand - rank_in_order + 1
        if st.axis == AXIS_POS:
            p = self._sel_pos(r, rank)
            return p, int(self.vals[p])
        v = self._sel_val(r, rank)
        return int(self.tr.inv[v]), v

    # --- emission ----------------------------------------------------------

    def _emit(self, bound: dict) -> None:
        xs = sorted(p for p, _ in bound.values())
        copy = tuple(x + 1 for x in xs)
        vs = [int(self.vals[x]) for x in xs]
        pat = [int(d) for d in self.pattern]
        for a in range(self.k):
            for b in range(a + 1, self.k):
                if (vs[a] < vs[b]) != (pat[a] < pat[b]):
                    raise AssertionError(f"emitted tuple {copy} does not match {self.pattern}")
        self.out.append(copy)
        self.stats.emitted += 1
        if self.t is not None and len(self.out) >= self.t:
            raise _Full

    def _pair_assignments(self, kind, e, u, rects,
                          limit: int | None) -> Iterator[tuple[int, tuple, int, tuple]]:
        """Assignments (elem_a, point_a, elem_b, point_b) of a terminal pair,
        in the structure's deterministic order."""
        if kind in (PAIR_12, PAIR_21):
            r = _isect(rects[e], rects[u])
            x1, x2, y1, y2 = r
            if x1 > x2 or y1 > y2:
                return
            lo_e, hi_e = (e, u) if self.pos_of[e] < self.pos_of[u] else (u, e)
            if kind == PAIR_12:
                total = self._exact12(r)
                if total == 0:
                    return
                want = total if limit is None else min(total, limit)
                out_u = np.empty(want, dtype=np.int64)
                out_v = np.empty(want, dtype=np.int64)
                emitted, ab = K.list12_rect(*self.tr.list_args(), x1, x2, y1, y2,
                                            want, out_u, out_v)
                self.stats.abandoned += int(ab)
                for q in range(emitted):
                    pa, pb = int(out_u[q]), int(out_v[q])
                    yield lo_e, (pa, int(self.vals[pa])), hi_e, (pb, int(self.vals[pb]))
            else:
                rv = self.ws.rev
                n = self.ws.n
                total = self._exact21(r)
                if total == 0:
                    return
                want = total if limit is None else min(total, limit)
                out_u = np.empty(want, dtype=np.int64)
                out_v = np.empty(want, dtype=np.int64)
                emitted, ab = K.list12_rect(*rv.list_args(), n - 1 - x2, n - 1 - x1, y1, y2,
                                            want, out_u, out_v)
                self.stats.abandoned += int(ab)
                for q in range(emitted):
                    pa, pb = n - 1 - int(out_v[q]), n - 1 - int(out_u[q])
                    yield lo_e, (pa, int(self.vals[pa])), hi_e, (pb, int(self.vals[pb]))
        elif kind == PAIR_XDOM:
            a, b = (e, u) if self.pos_of[e] < self.pos_of[u] else (u, e)
            ra, rb = rects[a], rects[b]
            na = self._cnt(ra)
            if na == 0:
                return
            pa0 = self._sel_pos(ra, 1)
            if self._cnt((max(rb[0], pa0 + 1), rb[1], rb[2], rb[3])) == 0:
                return  # pair-level emptiness; no candidate was fixed
            done = 0
            for q in range(1, na + 1):
                pa = self._sel_pos(ra, q)
                rbq = (max(rb[0], pa + 1), rb[1], rb[2], rb[3])
                cnt = self._cnt(rbq)
                if cnt == 0:
                    self.stats.abandoned += 1
                    return
                for rr in range(1, cnt + 1):
                    pb = self._sel_pos(rbq, rr)
                    yield a, (pa, int(self.vals[pa])), b, (pb, int(self.vals[pb]))
                    done += 1
                    if limit is not None and done >= limit:
                        return
        else:  # PAIR_YDOM
            a, b = (e, u) if e < u else (u, e)
            ra, rb = rects[a], rects[b]
            na = self._cnt(ra)
            if na == 0:
                return
            va0 = self._sel_val(ra, 1)
            if self._cnt((rb[0], rb[1], max(rb[2], va0 + 1), rb[3])) == 0:
                return
            done = 0
            for q in range(1, na + 1):
                va = self._sel_val(ra, q)
                rbq = (rb[0], rb[1], max(rb[2], va + 1), rb[3])
                cnt = self._cnt(rbq)
                if cnt == 0:
                    self.stats.abandoned += 1
                    return
                pa = int(self.tr.inv[va])
                for rr in range(1, cnt + 1):
                    pb = self._sel_pos(rbq, rr)
                    yield a, (pa, va), b, (pb, int(self.vals[pb]))
                    done += 1
                    if limit is not None and done >= limit:
                        return

    def _run_terminals(self, steps, rects, bound) -> None:
        """Cartesian product over the terminal factors."""
        if not steps:
            self._emit(bound)
            return
        st = steps[0]
        if st.role == ROLE_PAIR_TAIL:
            self._run_terminals(steps[1:], rects, bound)
            return
        if st.role == ROLE_SINGLETON:
            r = rects[st.element]
            cnt = self._cnt(r)
            for q in range(1, cnt + 1):
                p = self._sel_pos(r, q)
                nb = dict(bound)
                nb[st.element] = (p, int(self.vals[p]))
                self._run_terminals(steps[1:], rects, nb)
            return
        if st.role == ROLE_PAIR_LEAD:
            rest = steps[2:]
            more = any(s.role != ROLE_PAIR_TAIL for s in rest)
            limit = None
            if not more and self.t is not None:
                limit = self.t - len(self.out)
            for ea, pta, eb, ptb in self._pair_assignments(
                    st.pair_kind, st.element, steps[1].element, rects, limit):
                nb = dict(bound)
                nb[ea] = pta
                nb[eb] = ptb
                self._run_terminals(rest, rects, nb)
            return
        raise AssertionError("scan encountered in terminal block")

    # --- main chain recursion -------------------------------------------------

    def run_chain(self, steps, rects, bound) -> None:
        """Enumerate completions of the chain (terminals plus scans)."""
        i = 0
        while i < len(steps) and steps[i].role != ROLE_STEP:
            i += 1
        if i >= len(steps):
            self._run_terminals(steps, rects, bound)
            return
        st = steps[i]
        rest = _drop(steps, i)
        r = rects[st.element]
        n_cand = self._cnt(r)
        for q in range(1, n_cand + 1):
            pt = self._candidate(st, r, q)
            nrects = self._capped(rects, st.element, pt)
            if not self._exists(rest, nrects):
                self.stats.abandoned += 1
                return
            nb = dict(bound)
            nb[st.element] = pt
            self.run_chain(rest, nrects, nb)


def _drop(steps, i):
    return tuple(s for q, s in enumerate(steps) if q != i)


def _isect(r1, r2):
    return (max(r1[0], r2[0]), min(r1[1], r2[1]), max(r1[2], r2[2]), min(r1[3], r2[3]))


def _whole(n: int):
    return (0, n - 1, 0, n - 1)


def _anchor_cells_k34(lister: _Lister, pattern: str) -> None:
    """Anchor-position cells for the k in {3, 4} hand chains (and the bucket
    cells of 2413)."""
    ws = lister.ws
    n = ws.n
    vals = lister.vals
    if pattern == "2413":
        nt = ws.main.nt
        L = max((nt - 1).bit_length(), 0)
        for i in range(n):
            vi = int(vals[i])
            produced_any = False
            for j in range(L):
                blk = 1 << j
                for heavy in (1, 0):
                    if heavy == 1:
                        if (i >> j) & 1:
                            continue
                        b0_hi = ((i >> j) << j) + blk - 1
                        base = {
                            2: _whole(n),
                            4: _whole(n),
                            3: (b0_hi + 1, b0_hi + blk, 0, n - 1),
                            1: (i + 1, b0_hi, 0, n - 1),
                        }
                        prebound = 4
                        steps = (Step(3, ROLE_STEP, AXIS_VAL, False),
                                 Step(1, ROLE_STEP, AXIS_VAL, True),
                                 Step(2, ROLE_SINGLETON))
                    else:
                        if not ((i >> j) & 1):
                            continue
                        b0_lo = (i >> j) << j
                        base = {
                            2: _whole(n),
                            3: _whole(n),
                            4: (b0_lo - blk, b0_lo - 1, 0, n - 1),
                            1: (b0_lo, i - 1, 0, n - 1),
                        }
                        prebound = 3
                        steps = (Step(4, ROLE_STEP, AXIS_POS, False),
                                 Step(1, ROLE_STEP, AXIS_VAL, True),
                                 Step(2, ROLE_SINGLETON))
                    rects = {e: r for e, r in base.items() if e != prebound}
                    rects = lister._capped(rects | {prebound: base[prebound]}, prebound, (i, vi))
                    del rects[prebound]
                    if not lister._exists(steps, rects):
                        continue
                    produced_any = True
                    lister.run_chain(steps, rects, {prebound: (i, vi)})
            if not produced_any:
                lister.stats.abandon_position(i)
        return
    fixed, steps = HAND_CHAINS[pattern]
    for i in range(n):
        vi = int(vals[i])
        base = {e: _whole(n) for e in range(1, len(pattern) + 1)}
        rects = lister._capped(base, fixed, (i, vi))
        del rects[fixed]
        if not lister._exists(steps, rects):
            lister.stats.abandon_position(i)
            continue
        lister.run_chain(steps, rects, {fixed: (i, vi)})


def _cells_k5(lister: _Lister, pattern: str, table) -> None:
    ws = lister.ws
    tr = ws.main
    (iroot, i_ylo, i_yhi, i_yoff, i_ylen, _xo, _c12, _ao, _al, i_lo, i_hi,
     i_outer, _xb, _ab, nn) = tr.inner
    for w in range(nn):
        t = int(i_outer[w])
        oxlo, oxhi = int(tr.olo[t]), int(tr.ohi[t])
        if oxlo == oxhi:
            continue
        ylo, yhi = int(i_ylo[w]), int(i_yhi[w])
        if ylo == yhi or int(i_ylen[w]) < 5:
            continue
        xmid = (oxlo + oxhi) // 2
        ymid = (ylo + yhi) // 2
        for p in range(1, 5):
            for m in range(1, 5):
                entry = table[(pattern, p, m)]
                quad = {}
                for e in range(1, 6):
                    x1, x2 = (oxlo, xmid) if lister.pos_of[e] <= p else (xmid + 1, oxhi)
                    y1, y2 = (ylo, ymid) if e <= m else (ymid + 1, yhi)
                    quad[e] = (x1, x2, y1, y2)
                if isinstance(entry, FactorRecipe):
                    _run_factor_cell(lister, entry, quad, p, m)
                    continue
                if any(lister._cnt(quad[e]) == 0 for e in range(1, 6)):
                    continue
                f = entry.fixed
                rf = quad[f]
                nf = lister._cnt(rf)
                for q in range(1, nf + 1):
                    pf = lister._sel_pos(rf, q)
                    pt = (pf, int(lister.vals[pf]))
                    rects = lister._capped({e: r for e, r in quad.items()}, f, pt)
                    del rects[f]
                    if not lister._exists(entry.steps, rects):
                        lister.stats.abandon_position(pf)
                        continue
                    lister.run_chain(entry.steps, rects, {f: pt})


def _run_factor_cell(lister: _Lister, entry: FactorRecipe, quad, p, m) -> None:
    """Factorization cells: every block 2413/3142 copy times every lone point."""
    ws = lister.ws
    lone_elem = int(entry.pattern[0]) if p == 1 else int(entry.pattern[4])
    lone_rect = quad[lone_elem]
    block_elems = [e for e in range(1, 6) if e != lone_elem]
    block_rect = quad[block_elems[0]]  # all four share the diagonal quadrant
    n_lone = lister._cnt(lone_rect)
    if n_lone == 0:
        return
    # gather the block sub-permutation
    bx1, bx2, by1, by2 = block_rect
    pts = []
    for q in range(1, lister._cnt(block_rect) + 1):
        pos = lister._sel_pos(block_rect, q)
        pts.append(pos)
    if len(pts) < 4:
        return
    pts.sort()
    vals_order = sorted(pts, key=lambda x: int(lister.vals[x]))
    rank = {pos: r for r, pos in enumerate(vals_order)}
    sub = Permutation(tuple(rank[pos] + 1 for pos in pts))
    msub = len(pts)
    if entry.block == "2413":
        sub_stats = ListStats()
        sub_lister = _Lister(Workspace(sub), "2413", None, sub_stats)
        try:
            _anchor_cells_k34(sub_lister, "2413")
        except _Full:
            pass
        sub_copies = sub_lister.out
        barren_local = sub_stats.barren_positions
    else:
        # 3142 reverses onto 2413; barren anchors map back through the reversal
        rsub = Permutation(tuple(sub.values[::-1]))
        sub_stats = ListStats()
        sub_lister = _Lister(Workspace(rsub), "2413", None, sub_stats)
        try:
            _anchor_cells_k34(sub_lister, "2413")
        except _Full:
            pass
        sub_copies = [tuple(sorted(msub + 1 - x for x in c)) for c in sub_lister.out]
        barren_local = {msub - 1 - x for x in sub_stats.barren_positions}
    # fold the accounting: anchor dedup translates to global positions
    lister.stats.abandoned += sub_stats.abandoned - len(sub_stats.barren_positions)
    for local in barren_local:
        lister.stats.abandon_position(pts[local])
    for sub_copy in sub_copies:
        block_bound = {}
        for local_pos, e in zip(sub_copy, sorted(block_elems, key=lambda e: lister.pos_of[e])):
            gp = pts[local_pos - 1]
            block_bound[e] = (gp, int(lister.vals[gp]))
        for q in range(1, n_lone + 1):
            pl = lister._sel_pos(lone_rect, q)
            nb = dict(block_bound)
            nb[lone_elem] = (pl, int(lister.vals[pl]))
            lister._emit(nb)


def list_copies_stats(p: Permutation, sigma: Pattern,
                      t: int | None) -> tuple[list[tuple[int, ...]], ListStats]:
    """List min(t, total) distinct copies plus the work-accounting stats.

    t=None lists everything.  Output order is the engine traversal order and
    is a prefix of any longer listing of the same inputs.
    """
    if t is not None and t < 0:
        raise ValueError("t must be nonnegative")
    stats = ListStats()
    name = str(sigma)
    k = sigma.k
    n = p.n
    if t == 0 or k > n:
        return [], stats
    if k == 1:
        want = n if t is None else min(t, n)
        stats.emitted = want
        return [(i,) for i in range(1, want + 1)], stats
    ws = Workspace(p)
    if k == 2:
        lister = _Lister(ws, name, t, stats)
        kind = PAIR_12 if name == "12" else PAIR_21
        e, u = (1, 2)
        rects = {1: _whole(n), 2: _whole(n)}
        try:
            lim = None if t is None else t
            for ea, pta, eb, ptb in lister._pair_assignments(kind, e, u, rects, lim):
                lister._emit({ea: pta, eb: ptb})
        except _Full:
            pass
        return lister.out, stats
    if k == 3:
        lister = _Lister(ws, name, t, stats)
        try:
            _anchor_cells_k34(lister, name)
        except _Full:
            pass
        return lister.out, stats
    if k == 4:
        rep, tf = canonicalize(sigma)
        if tf.kind == "identity":
            lister = _Lister(ws, name, t, stats)
            try:
                _anchor_cells_k34(lister, name)
            except _Full:
                pass
            return lister.out, stats
        tp = tf.apply(p)
        lister = _Lister(Workspace(tp), str(rep), t, stats)
        try:
            _anchor_cells_k34(lister, str(rep))
        except _Full:
            pass
        inv = tf.inverse_transform()
        mapped = [inv.apply_copy(c, tp) for c in lister.out]
        return mapped, stats
    # k == 5
    from .count5 import default_table

    lister = _Lister(ws, name, t, stats)
    try:
        _cells_k5(lister, name, default_table())
    except _Full:
        pass
    return lister.out, stats


def list_copies(p: Permutation, sigma: Pattern, t: int | None) -> list[tuple[int, ...]]:
    """Theorem-style listing: up to t distinct copies as 1-based index tuples."""
    return list_copies_stats(p, sigma, t)[0]
