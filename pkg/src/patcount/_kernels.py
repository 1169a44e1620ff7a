"""Numba kernels over flat array structures.

Everything here is internal: 0-indexed positions and values, inclusive
rectangle bounds, int64 buffers.  The public modules wrap these with 1-indexed
validated APIs.

Structure layout
----------------
The 1D tree is a classic merge tree over positions padded to a power of two
``nt``: heap node t (1 <= t < 2*nt) covers positions [lo_t, hi_t]; its points
are stored sorted by value in ``tvals`` with companion positions ``tpos``,
at offsets ``toff[t] .. toff[t]+tlen[t]``.  A mirrored tree built on the
inverse permutation answers value-rank queries.

The 2D structure adds, per outer heap node, a sparse dyadic tree over values;
see ``build_inner_trees``.
"""
from __future__ import annotations

import numpy as np
from numba import njit

NB_OPTS = dict(cache=True, fastmath=False)


# ---------------------------------------------------------------------------
# 1D merge tree (segment tree with sorted auxiliary lists)
# ---------------------------------------------------------------------------


def padded_size(n: int) -> int:
    nt = 1
    while nt < n:
        nt *= 2
    return nt


@njit(**NB_OPTS)
def build_tree(vals, nt):
    """Build the merge tree for a 0-indexed permutation array ``vals``.

    Returns (toff, tlen, tvals, tpos).  Node t's points, sorted by value,
    are tvals[toff[t] : toff[t]+tlen[t]] with positions tpos[same range].
    """
    n = vals.size
    nnodes = 2 * nt
    tlen = np.zeros(nnodes, dtype=np.int64)
    for t in range(nt, 2 * nt):
        if t - nt < n:
            tlen[t] = 1
    for t in range(nt - 1, 0, -1):
        tlen[t] = tlen[2 * t] + tlen[2 * t + 1]
    toff = np.zeros(nnodes + 1, dtype=np.int64)
    for t in range(1, nnodes):
        toff[t + 1] = toff[t] + tlen[t]
    total = toff[nnodes]
    tvals = np.empty(total, dtype=np.int64)
    tpos = np.empty(total, dtype=np.int64)
    for t in range(nt, 2 * nt):
        if tlen[t]:
            tvals[toff[t]] = vals[t - nt]
            tpos[toff[t]] = t - nt
    # bottom-up merge by value
    for t in range(nt - 1, 0, -1):
        a, la = toff[2 * t], tlen[2 * t]
        b, lb = toff[2 * t + 1], tlen[2 * t + 1]
        o = toff[t]
        i = 0
        j = 0
        while i < la and j < lb:
            if tvals[a + i] < tvals[b + j]:
                tvals[o] = tvals[a + i]
                tpos[o] = tpos[a + i]
                i += 1
            else:
                tvals[o] = tvals[b + j]
                tpos[o] = tpos[b + j]
                j += 1
            o += 1
        while i < la:
            tvals[o] = tvals[a + i]
            tpos[o] = tpos[a + i]
            i += 1
            o += 1
        while j < lb:
            tvals[o] = tvals[b + j]
            tpos[o] = tpos[b + j]
            j += 1
            o += 1
    return toff, tlen, tvals, tpos


@njit(inline="always", **NB_OPTS)
def _bisect_left(arr, lo, hi, x):
    """First index in arr[lo:hi] with arr[idx] >= x, as absolute index."""
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(inline="always", **NB_OPTS)
def _node_count(toff, tlen, tvals, t, a, b):
    """Points of node t with value in [a, b]."""
    s = toff[t]
    e = s + tlen[t]
    return _bisect_left(tvals, s, e, b + 1) - _bisect_left(tvals, s, e, a)


@njit(**NB_OPTS)
def count_rect(toff, tlen, tvals, nt, lo, hi, a, b):
    """|{x : lo <= x <= hi, a <= vals[x] <= b}| over the canonical cover."""
    if lo > hi or a > b or hi < 0 or b < 0:
        return 0
    if lo < 0:
        lo = 0
    if a < 0:
        a = 0
    if hi >= nt:
        hi = nt - 1
    total = 0
    l = lo + nt
    r = hi + nt + 1
    while l < r:
        if l & 1:
            total += _node_count(toff, tlen, tvals, l, a, b)
            l += 1
        if r & 1:
            r -= 1
            total += _node_count(toff, tlen, tvals, r, a, b)
        l >>= 1
        r >>= 1
    return total


@njit(**NB_OPTS)
def count_rect_nodes(toff, tlen, tvals, nt, lo, hi, a, b):
    """Number of canonical nodes a count_rect query touches (instrumentation)."""
    if lo > hi or a > b:
        return 0
    nodes = 0
    l = lo + nt
    r = hi + nt + 1
    while l < r:
        if l & 1:
            nodes += 1
            l += 1
        if r & 1:
            r -= 1
            nodes += 1
        l >>= 1
        r >>= 1
    return nodes


@njit(**NB_OPTS)
def select_by_location(toff, tlen, tvals, nt, lo, hi, a, b, rank):
    """Position of the rank-th leftmost point in the rectangle (rank >= 1).

    Returns -1 if rank is out of range.  Canonical nodes are visited left to
    right; the answer node is then descended with per-child counts.
    """
    if lo > hi or a > b or rank < 1:
        return -1
    if lo < 0:
        lo = 0
    if hi >= nt:
        hi = nt - 1
    left_nodes = np.empty(64, dtype=np.int64)
    right_nodes = np.empty(64, dtype=np.int64)
    nl = 0
    nr = 0
    l = lo + nt
    r = hi + nt + 1
    while l < r:
        if l & 1:
            left_nodes[nl] = l
            nl += 1
            l += 1
        if r & 1:
            r -= 1
            right_nodes[nr] = r
            nr += 1
        l >>= 1
        r >>= 1
    rem = rank
    target = -1
    for i in range(nl + nr):
        t = left_nodes[i] if i < nl else right_nodes[nl + nr - 1 - i]
        c = _node_count(toff, tlen, tvals, t, a, b)
        if rem <= c:
            target = t
            break
        rem -= c
    if target == -1:
        return -1
    t = target
    while t < nt:
        cl = _node_count(toff, tlen, tvals, 2 * t, a, b)
        if rem <= cl:
            t = 2 * t
        else:
            rem -= cl
            t = 2 * t + 1
    return t - nt


@njit(**NB_OPTS)
def kth_value_in_rect(toff, tlen, tvals, nt, moff, mlen, mvals, lo, hi, a, b, rank):
    """rank-th smallest value among points in the rectangle (rank >= 1).

    Answered on the mirrored tree (m*), which is the merge tree of the inverse
    permutation: mirror positions are values and vice versa.
    """
    return select_by_location(moff, mlen, mvals, nt, a, b, lo, hi, rank)


# ---------------------------------------------------------------------------
# Birge schedule (oblivious monotone-sum decomposition)
# ---------------------------------------------------------------------------


@njit(**NB_OPTS)
def birge_delta(n, eps):
    """Growth parameter for a length-n schedule at accuracy eps.

    Starts at eps/4 and halves until the exact worst-case ratio over monotone
    step sequences, max_j (M_{j+1}-1)/M_j over cumulative interval ends M_j,
    is at most 1+eps.  Step sequences are the extreme rays of the monotone
    cone, so this bound is exact for the whole class.
    """
    delta = eps / 4.0
    for _ in range(64):
        ok = True
        g = 1.0
        cum = 1  # M_1 = 1 (first interval has length 1)
        while cum < n:
            g *= 1.0 + delta
            ln = int(g)
            if ln < 1:
                ln = 1
            nxt = cum + ln
            if nxt > n:
                nxt = n
            if (nxt - 1) > (1.0 + eps) * cum:
                ok = False
                break
            cum = nxt
        if ok:
            return delta
        delta *= 0.5
    return delta


@njit(**NB_OPTS)
def birge_fill(n, eps, idx_out, w_out):
    """Fill probe indices (0-based, last element of each interval) and weights
    for a length-n nonincreasing sequence; returns the probe count.

    The estimate sum(w * x[idx]) lies in [S/(1+eps), S] for every
    nonincreasing nonnegative sequence x with sum S.
    """
    if n <= 0:
        return 0
    delta = birge_delta(n, eps)
    g = 1.0
    cum = 0
    ell = 0
    while cum < n:
        ln = int(g)
        if ln < 1:
            ln = 1
        if cum + ln > n:
            ln = n - cum
        cum += ln
        idx_out[ell] = cum - 1
        w_out[ell] = ln
        ell += 1
        g *= 1.0 + delta
    return ell


@njit(**NB_OPTS)
def birge_len_bound(n, eps):
    """Probe count of the schedule for (n, eps) without materializing it."""
    if n <= 0:
        return 0
    delta = birge_delta(n, eps)
    g = 1.0
    cum = 0
    ell = 0
    while cum < n:
        ln = int(g)
        if ln < 1:
            ln = 1
        cum += ln
        ell += 1
        g *= 1.0 + delta
    return ell


# ---------------------------------------------------------------------------
# Brute-force oracle: counts of every k-pattern in one enumeration pass
# ---------------------------------------------------------------------------


@njit(**NB_OPTS)
def oracle_count_all(vals, k):
    """Exact counts of all k! patterns by exhaustive tuple enumeration.

    Returns an int64 array indexed by the lexicographic rank of the pattern.
    O(k n^k); the desk-scale ground truth everything else is tested against.
    """
    n = vals.size
    fact = np.array([1, 1, 2, 6, 24, 120], dtype=np.int64)
    out = np.zeros(fact[k], dtype=np.int64)
    if k > n:
        return out
    v = np.empty(5, dtype=np.int64)
    if k == 1:
        out[0] = n
        return out
    if k == 2:
        for i1 in range(n):
            for i2 in range(i1 + 1, n):
                out[0 if vals[i1] < vals[i2] else 1] += 1
        return out
    if k == 3:
        for i1 in range(n):
            v[0] = vals[i1]
            for i2 in range(i1 + 1, n):
                v[1] = vals[i2]
                for i3 in range(i2 + 1, n):
                    v[2] = vals[i3]
                    r = 0
                    for a in range(3):
                        s = 0
                        for b in range(a + 1, 3):
                            if v[b] < v[a]:
                                s += 1
                        r += s * fact[2 - a]
                    out[r] += 1
        return out
    if k == 4:
        for i1 in range(n):
            v[0] = vals[i1]
            for i2 in range(i1 + 1, n):
                v[1] = vals[i2]
                for i3 in range(i2 + 1, n):
                    v[2] = vals[i3]
                    for i4 in range(i3 + 1, n):
                        v[3] = vals[i4]
                        r = 0
                        for a in range(4):
                            s = 0
                            for b in range(a + 1, 4):
                                if v[b] < v[a]:
                                    s += 1
                            r += s * fact[3 - a]
                        out[r] += 1
        return out
    for i1 in range(n):
        v[0] = vals[i1]
        for i2 in range(i1 + 1, n):
            v[1] = vals[i2]
            for i3 in range(i2 + 1, n):
                v[2] = vals[i3]
                for i4 in range(i3 + 1, n):
                    v[3] = vals[i4]
                    for i5 in range(i4 + 1, n):
                        v[4] = vals[i5]
                        r = 0
                        for a in range(5):
                            s = 0
                            for b in range(a + 1, 5):
                                if v[b] < v[a]:
                                    s += 1
                            r += s * fact[4 - a]
                        out[r] += 1
    return out


@njit(**NB_OPTS)
def position_stats(vals):
    """Per-position dominance stats via a Fenwick tree over values.

    Returns (a, b, c, d): a[i] = #{j<i: vals[j]<vals[i]}, b[i] left-above,
    c[i] right-below, d[i] right-above.
    """
    n = vals.size
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    c = np.zeros(n, dtype=np.int64)
    d = np.zeros(n, dtype=np.int64)
    fen = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        # prefix sum over values < vals[i]
        s = 0
        j = vals[i]  # values are 0-indexed; query prefix [0, vals[i]-1] -> index vals[i]
        while j > 0:
            s += fen[j]
            j -= j & (-j)
        a[i] = s
        b[i] = i - s
        c[i] = vals[i] - s
        d[i] = (n - 1 - vals[i]) - (i - s)
        j = vals[i] + 1
        while j <= n:
            fen[j] += 1
            j += j & (-j)
    return a, b, c, d


@njit(**NB_OPTS)
def count_k3_all(vals):
    """Exact counts of the six 3-patterns in O(n log n), lex-rank indexed."""
    n = vals.size
    out = np.zeros(6, dtype=np.int64)
    if n < 3:
        return out
    a, b, c, d = position_stats(vals)
    s123 = 0
    s321 = 0
    sac = 0
    sbd = 0
    sb2 = 0
    sc2 = 0
    for i in range(n):
        s123 += a[i] * d[i]
        s321 += b[i] * c[i]
        sac += a[i] * c[i]
        sbd += b[i] * d[i]
        sb2 += b[i] * (b[i] - 1) // 2
        sc2 += c[i] * (c[i] - 1) // 2
    n231 = sb2 - s321
    n132 = sac - n231
    n312 = sc2 - s321
    n213 = sbd - n312
    # lex order of 3-patterns: 123,132,213,231,312,321
    out[0] = s123
    out[1] = n132
    out[2] = n213
    out[3] = n231
    out[4] = n312
    out[5] = s321
    return out


@njit(**NB_OPTS)
def count_inversions(vals):
    """Number of 21-copies, via the Fenwick pass."""
    n = vals.size
    _, b, _, _ = position_stats(vals)
    total = 0
    for i in range(n):
        total += b[i]
    return total


# ---------------------------------------------------------------------------
# Sparse 2D structure: per outer node, a dyadic value tree of its points
# ---------------------------------------------------------------------------


@njit(**NB_OPTS)
def outer_ranges(nt):
    """Inclusive position range [olo[t], ohi[t]] of every outer heap node."""
    olo = np.zeros(2 * nt, dtype=np.int64)
    ohi = np.zeros(2 * nt, dtype=np.int64)
    for t in range(nt, 2 * nt):
        olo[t] = t - nt
        ohi[t] = t - nt
    for t in range(nt - 1, 0, -1):
        olo[t] = olo[2 * t]
        ohi[t] = ohi[2 * t + 1]
    return olo, ohi


@njit(**NB_OPTS)
def build_inner(toff, tlen, tvals, tpos, nt):
    """Build the sparse inner (value) trees of every nonempty outer node.

    A node's y-sorted points are a contiguous slice of its outer node's
    value-sorted list, so only offsets are stored for those; the x-sorted
    copy goes to ``xbuf``.  Exact 12-counts are computed during the bottom-up
    position merge (non-inversions of the position sequence in value order).
    Single-point chains are compressed: a node is subdivided only while it
    holds >= 2 points.

    Returns (iroot, ylo, yhi, yoff, ylen, xoff, c12, aug_off, aug_len,
    child_lo, child_hi, iouter, xbuf, augbuf, n_nodes).
    """
    nnodes_cap = 0
    xcap = 0
    # pass 1: count nodes and x-buffer entries
    for t in range(1, 2 * nt):
        if tlen[t] == 0:
            continue
        # traverse with explicit stack
        stack_ylo = np.empty(200, dtype=np.int64)
        stack_yhi = np.empty(200, dtype=np.int64)
        stack_s = np.empty(200, dtype=np.int64)
        stack_e = np.empty(200, dtype=np.int64)
        sp = 0
        stack_ylo[0] = 0
        stack_yhi[0] = nt - 1
        stack_s[0] = toff[t]
        stack_e[0] = toff[t] + tlen[t]
        sp = 1
        while sp > 0:
            sp -= 1
            ylo = stack_ylo[sp]
            yhi = stack_yhi[sp]
            s = stack_s[sp]
            e = stack_e[sp]
            nnodes_cap += 1
            xcap += e - s
            if e - s >= 2 and ylo < yhi:
                ymid = (ylo + yhi) // 2
                m = _bisect_left(tvals, s, e, ymid + 1)
                if m > s:
                    stack_ylo[sp] = ylo
                    stack_yhi[sp] = ymid
                    stack_s[sp] = s
                    stack_e[sp] = m
                    sp += 1
                if e > m:
                    stack_ylo[sp] = ymid + 1
                    stack_yhi[sp] = yhi
                    stack_s[sp] = m
                    stack_e[sp] = e
                    sp += 1
    iroot = np.full(2 * nt, -1, dtype=np.int64)
    i_ylo = np.empty(nnodes_cap, dtype=np.int64)
    i_yhi = np.empty(nnodes_cap, dtype=np.int64)
    i_yoff = np.empty(nnodes_cap, dtype=np.int64)
    i_ylen = np.empty(nnodes_cap, dtype=np.int64)
    i_xoff = np.empty(nnodes_cap, dtype=np.int64)
    i_c12 = np.zeros(nnodes_cap, dtype=np.int64)
    i_aug_off = np.zeros(nnodes_cap, dtype=np.int64)
    i_aug_len = np.zeros(nnodes_cap, dtype=np.int64)
    i_lo = np.full(nnodes_cap, -1, dtype=np.int64)
    i_hi = np.full(nnodes_cap, -1, dtype=np.int64)
    i_outer = np.empty(nnodes_cap, dtype=np.int64)
    xbuf = np.empty(xcap, dtype=np.int64)
    augbuf = np.empty(xcap, dtype=np.int64)
    nn = 0
    xcur = 0
    augcur = 0
    cand = np.empty(nt, dtype=np.bool_)
    for t in range(1, 2 * nt):
        if tlen[t] == 0:
            continue
        first = nn
        # create records top-down: stack holds (node_idx to fill) after parent
        st_ylo = np.empty(200, dtype=np.int64)
        st_yhi = np.empty(200, dtype=np.int64)
        st_s = np.empty(200, dtype=np.int64)
        st_e = np.empty(200, dtype=np.int64)
        st_parent = np.empty(200, dtype=np.int64)
        st_side = np.empty(200, dtype=np.int64)  # 0 lo child, 1 hi child
        sp = 0
        st_ylo[0] = 0
        st_yhi[0] = nt - 1
        st_s[0] = toff[t]
        st_e[0] = toff[t] + tlen[t]
        st_parent[0] = -1
        st_side[0] = 0
        sp = 1
        while sp > 0:
            sp -= 1
            ylo = st_ylo[sp]
            yhi = st_yhi[sp]
            s = st_s[sp]
            e = st_e[sp]
            par = st_parent[sp]
            side = st_side[sp]
            idx = nn
            nn += 1
            i_ylo[idx] = ylo
            i_yhi[idx] = yhi
            i_yoff[idx] = s
            i_ylen[idx] = e - s
            i_xoff[idx] = xcur
            i_outer[idx] = t
            xcur += e - s
            if par == -1:
                iroot[t] = idx
            elif side == 0:
                i_lo[par] = idx
            else:
                i_hi[par] = idx
            if e - s >= 2 and ylo < yhi:
                ymid = (ylo + yhi) // 2
                m = _bisect_left(tvals, s, e, ymid + 1)
                # push hi first so lo is created (and filled) first
                if e > m:
                    st_ylo[sp] = ymid + 1
                    st_yhi[sp] = yhi
                    st_s[sp] = m
                    st_e[sp] = e
                    st_parent[sp] = idx
                    st_side[sp] = 1
                    sp += 1
                if m > s:
                    st_ylo[sp] = ylo
                    st_yhi[sp] = ymid
                    st_s[sp] = s
                    st_e[sp] = m
                    st_parent[sp] = idx
                    st_side[sp] = 0
                    sp += 1
        # bottom-up: children have larger indices than parents
        for idx in range(nn - 1, first - 1, -1):
            lo = i_lo[idx]
            hi = i_hi[idx]
            xo = i_xoff[idx]
            ln = i_ylen[idx]
            if lo == -1 and hi == -1:
                # terminal: single point (distinct values force ylen <= 1 here)
                s = i_yoff[idx]
                for q in range(ln):
                    xbuf[xo + q] = tpos[s + q]
                i_c12[idx] = 0
            elif lo == -1 or hi == -1:
                ch = lo if lo != -1 else hi
                co = i_xoff[ch]
                for q in range(ln):
                    xbuf[xo + q] = xbuf[co + q]
                i_c12[idx] = i_c12[ch]
            else:
                ao = i_xoff[lo]
                al = i_ylen[lo]
                bo = i_xoff[hi]
                bl = i_ylen[hi]
                ii = 0
                jj = 0
                cross = 0
                o = xo
                while ii < al and jj < bl:
                    if xbuf[ao + ii] < xbuf[bo + jj]:
                        xbuf[o] = xbuf[ao + ii]
                        ii += 1
                    else:
                        xbuf[o] = xbuf[bo + jj]
                        cross += ii
                        jj += 1
                    o += 1
                while ii < al:
                    xbuf[o] = xbuf[ao + ii]
                    ii += 1
                    o += 1
                while jj < bl:
                    xbuf[o] = xbuf[bo + jj]
                    cross += ii
                    jj += 1
                    o += 1
                i_c12[idx] = i_c12[lo] + i_c12[hi] + cross
            # augmentation: points of the node having a dominator inside it,
            # emitted in ascending value order (largest dominator count first).
            s = i_yoff[idx]
            maxx = -1
            for q in range(ln - 1, -1, -1):
                p = tpos[s + q]
                cand[q] = maxx > p
                if p > maxx:
                    maxx = p
            i_aug_off[idx] = augcur
            na = 0
            for q in range(ln):
                if cand[q]:
                    augbuf[augcur + na] = tpos[s + q]
                    na += 1
            i_aug_len[idx] = na
            augcur += na
    return (iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12,
            i_aug_off, i_aug_len, i_lo, i_hi, i_outer, xbuf, augbuf, nn)


MAX_COVER = 4096


@njit(**NB_OPTS)
def collect_cover(toff, tlen, tvals, nt, olo, ohi,
                  iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12, i_lo, i_hi,
                  x1, x2, y1, y2,
                  c_xlo, c_xhi, c_yoff, c_ylen, c_xoff, c_c12, c_ylo, c_yhi, c_node):
    """Decompose the query rectangle into canonical inner-node point sets.

    Fills the c_* arrays and returns the number of cover entries.  The entries
    partition the points inside the rectangle.  Compressed single-point nodes
    are emitted whole when their point lies in the value range.
    """
    if x1 < 0:
        x1 = 0
    if y1 < 0:
        y1 = 0
    if x2 >= nt:
        x2 = nt - 1
    if y2 >= nt:
        y2 = nt - 1
    if x1 > x2 or y1 > y2:
        return 0
    nouter = 0
    onodes = np.empty(140, dtype=np.int64)
    l = x1 + nt
    r = x2 + nt + 1
    while l < r:
        if l & 1:
            onodes[nouter] = l
            nouter += 1
            l += 1
        if r & 1:
            r -= 1
            onodes[nouter] = r
            nouter += 1
        l >>= 1
        r >>= 1
    nc = 0
    stack = np.empty(256, dtype=np.int64)
    for oi in range(nouter):
        t = onodes[oi]
        if tlen[t] == 0:
            continue
        w = iroot[t]
        if w == -1:
            continue
        sp = 0
        stack[0] = w
        sp = 1
        while sp > 0:
            sp -= 1
            w = stack[sp]
            ylo = i_ylo[w]
            yhi = i_yhi[w]
            if yhi < y1 or ylo > y2:
                continue
            if y1 <= ylo and yhi <= y2:
                pass  # collect whole node
            elif i_ylen[w] == 1:
                yv = tvals[i_yoff[w]]
                if yv < y1 or yv > y2:
                    continue
            else:
                if i_lo[w] != -1:
                    stack[sp] = i_lo[w]
                    sp += 1
                if i_hi[w] != -1:
                    stack[sp] = i_hi[w]
                    sp += 1
                continue
            c_xlo[nc] = olo[t]
            c_xhi[nc] = ohi[t]
            c_yoff[nc] = i_yoff[w]
            c_ylen[nc] = i_ylen[w]
            c_xoff[nc] = i_xoff[w]
            c_c12[nc] = i_c12[w]
            c_ylo[nc] = i_ylo[w]
            c_yhi[nc] = i_yhi[w]
            c_node[nc] = w
            nc += 1
    return nc


@njit(**NB_OPTS)
def _cross_pairs_x(xbuf, tvals, tpos, xoff1, len1, xoff2, len2, eps, exact):
    """Pairs (u in R1, v in R2) with u.x < v.x; R2 strictly above R1 in value,
    identical x-interval.  Candidate counts are nonincreasing over u sorted by
    ascending position, so one Birge application suffices."""
    total = 0.0
    if len1 == 0 or len2 == 0:
        return total
    if exact:
        for q in range(len1):
            ux = xbuf[xoff1 + q]
            cnt = (xoff2 + len2) - _bisect_left(xbuf, xoff2, xoff2 + len2, ux + 1)
            total += cnt
        return total
    delta = birge_delta(len1, eps)
    g = 1.0
    cum = 0
    while cum < len1:
        ln = int(g)
        if ln < 1:
            ln = 1
        if cum + ln > len1:
            ln = len1 - cum
        cum += ln
        ux = xbuf[xoff1 + cum - 1]
        cnt = (xoff2 + len2) - _bisect_left(xbuf, xoff2, xoff2 + len2, ux + 1)
        total += ln * cnt
        g *= 1.0 + delta
    return total


@njit(**NB_OPTS)
def _cross_pairs_y(xbuf, tvals, tpos, yoff1, len1, yoff2, len2, eps, exact):
    """Pairs (u in R1, v in R2) with u.y < v.y; R2 strictly right of R1,
    value ranges overlapping.  u iterates by ascending value."""
    total = 0.0
    if len1 == 0 or len2 == 0:
        return total
    if exact:
        for q in range(len1):
            uy = tvals[yoff1 + q]
            cnt = (yoff2 + len2) - _bisect_left(tvals, yoff2, yoff2 + len2, uy + 1)
            total += cnt
        return total
    delta = birge_delta(len1, eps)
    g = 1.0
    cum = 0
    while cum < len1:
        ln = int(g)
        if ln < 1:
            ln = 1
        if cum + ln > len1:
            ln = len1 - cum
        cum += ln
        uy = tvals[yoff1 + cum - 1]
        cnt = (yoff2 + len2) - _bisect_left(tvals, yoff2, yoff2 + len2, uy + 1)
        total += ln * cnt
        g *= 1.0 + delta
    return total


@njit(**NB_OPTS)
def approx12_rect(toff, tlen, tvals, tpos, nt, olo, ohi,
                  iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12, i_lo, i_hi,
                  xbuf, x1, x2, y1, y2, eps, exact):
    """(1+eps)-approximate (or exact) number of 12-copies inside a rectangle.

    Sum of stored within-node counts over the canonical cover plus cross
    contributions over all ordered cover pairs.  Cross terms are disjoint, so
    each uses the full eps; the result lies in [T/(1+eps), T] where T is the
    exact count.
    """
    c_xlo = np.empty(MAX_COVER, dtype=np.int64)
    c_xhi = np.empty(MAX_COVER, dtype=np.int64)
    c_yoff = np.empty(MAX_COVER, dtype=np.int64)
    c_ylen = np.empty(MAX_COVER, dtype=np.int64)
    c_xoff = np.empty(MAX_COVER, dtype=np.int64)
    c_c12 = np.empty(MAX_COVER, dtype=np.int64)
    c_ylo = np.empty(MAX_COVER, dtype=np.int64)
    c_yhi = np.empty(MAX_COVER, dtype=np.int64)
    c_node = np.empty(MAX_COVER, dtype=np.int64)
    nc = collect_cover(toff, tlen, tvals, nt, olo, ohi,
                       iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12, i_lo, i_hi,
                       x1, x2, y1, y2,
                       c_xlo, c_xhi, c_yoff, c_ylen, c_xoff, c_c12, c_ylo, c_yhi, c_node)
    total = 0.0
    for a in range(nc):
        total += c_c12[a]
    for a in range(nc):
        for b in range(nc):
            if a == b:
                continue
            # u in cover[a], v in cover[b]: u.x < v.x and u.y < v.y
            if c_xlo[a] == c_xlo[b] and c_xhi[a] == c_xhi[b]:
                # same outer node: value ranges disjoint
                if c_ylo[b] > c_yhi[a]:
                    total += _cross_pairs_x(xbuf, tvals, tpos,
                                            c_xoff[a], c_ylen[a], c_xoff[b], c_ylen[b],
                                            eps, exact)
            elif c_xhi[a] < c_xlo[b]:
                # a strictly left of b
                if c_ylo[b] > c_yhi[a]:
                    total += float(c_ylen[a]) * float(c_ylen[b])
                elif c_yhi[b] < c_ylo[a]:
                    pass
                else:
                    total += _cross_pairs_y(xbuf, tvals, tpos,
                                            c_yoff[a], c_ylen[a], c_yoff[b], c_ylen[b],
                                            eps, exact)
    return total


@njit(**NB_OPTS)
def list12_rect(toff, tlen, tvals, tpos, nt, olo, ohi,
                iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12,
                i_aug_off, i_aug_len, i_lo, i_hi,
                xbuf, augbuf, vals,
                x1, x2, y1, y2, limit, out_u, out_v):
    """Emit up to ``limit`` 12-pairs (positions) inside the rectangle.

    Within-node pairs come from the augmentation lists (every listed
    candidate has at least one dominator inside its node); cross-node pairs
    mirror the counting decomposition with full descending-count enumeration
    and early termination.  Returns (emitted, abandons) where ``abandons``
    counts iterated candidates that produced no pair (at most one per
    productive loop, by monotonicity).
    """
    c_xlo = np.empty(MAX_COVER, dtype=np.int64)
    c_xhi = np.empty(MAX_COVER, dtype=np.int64)
    c_yoff = np.empty(MAX_COVER, dtype=np.int64)
    c_ylen = np.empty(MAX_COVER, dtype=np.int64)
    c_xoff = np.empty(MAX_COVER, dtype=np.int64)
    c_c12 = np.empty(MAX_COVER, dtype=np.int64)
    c_ylo = np.empty(MAX_COVER, dtype=np.int64)
    c_yhi = np.empty(MAX_COVER, dtype=np.int64)
    c_node = np.empty(MAX_COVER, dtype=np.int64)
    nc = collect_cover(toff, tlen, tvals, nt, olo, ohi,
                       iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12, i_lo, i_hi,
                       x1, x2, y1, y2,
                       c_xlo, c_xhi, c_yoff, c_ylen, c_xoff, c_c12, c_ylo, c_yhi, c_node)
    emitted = 0
    abandons = 0
    if limit <= 0:
        return emitted, abandons
    # within-node pairs via the augmentation lists: every listed candidate has
    # at least one dominator inside its node, so no within-node iteration is
    # wasted.
    for a in range(nc):
        if c_c12[a] == 0:
            continue
        w = c_node[a]
        for qa in range(i_aug_len[w]):
            ux = augbuf[i_aug_off[w] + qa]
            uy = vals[ux]
            cnt = count_rect(toff, tlen, tvals, nt, ux + 1, c_xhi[a], uy + 1, c_yhi[a])
            for r in range(1, cnt + 1):
                vx = select_by_location(toff, tlen, tvals, nt, ux + 1, c_xhi[a], uy + 1, c_yhi[a], r)
                out_u[emitted] = ux
                out_v[emitted] = vx
                emitted += 1
                if emitted >= limit:
                    return emitted, abandons
    # cross-node pairs
    for a in range(nc):
        for b in range(nc):
            if a == b:
                continue
            same_outer = c_xlo[a] == c_xlo[b] and c_xhi[a] == c_xhi[b]
            if same_outer:
                if not (c_ylo[b] > c_yhi[a]):
                    continue
                if c_ylen[a] == 0 or c_ylen[b] == 0:
                    continue
                # emptiness probe: lowest-x u has the largest partner count
                ux = xbuf[c_xoff[a]]
                first_cnt = (c_xoff[b] + c_ylen[b]) - _bisect_left(xbuf, c_xoff[b], c_xoff[b] + c_ylen[b], ux + 1)
                if first_cnt == 0:
                    continue
                for q in range(c_ylen[a]):
                    ux = xbuf[c_xoff[a] + q]
                    base = _bisect_left(xbuf, c_xoff[b], c_xoff[b] + c_ylen[b], ux + 1)
                    cnt = (c_xoff[b] + c_ylen[b]) - base
                    if cnt == 0:
                        abandons += 1
                        break
                    for r in range(cnt):
                        out_u[emitted] = ux
                        out_v[emitted] = xbuf[base + r]
                        emitted += 1
                        if emitted >= limit:
                            return emitted, abandons
            elif c_xhi[a] < c_xlo[b]:
                if c_yhi[b] < c_ylo[a]:
                    continue
                if c_ylen[a] == 0 or c_ylen[b] == 0:
                    continue
                if c_ylo[b] > c_yhi[a]:
                    # full product
                    for q in range(c_ylen[a]):
                        ux = tpos[c_yoff[a] + q]
                        for r in range(c_ylen[b]):
                            out_u[emitted] = ux
                            out_v[emitted] = tpos[c_yoff[b] + r]
                            emitted += 1
                            if emitted >= limit:
                                return emitted, abandons
                else:
                    uy = tvals[c_yoff[a]]
                    first_cnt = (c_yoff[b] + c_ylen[b]) - _bisect_left(tvals, c_yoff[b], c_yoff[b] + c_ylen[b], uy + 1)
                    if first_cnt == 0:
                        continue
                    for q in range(c_ylen[a]):
                        uy = tvals[c_yoff[a] + q]
                        base = _bisect_left(tvals, c_yoff[b], c_yoff[b] + c_ylen[b], uy + 1)
                        cnt = (c_yoff[b] + c_ylen[b]) - base
                        if cnt == 0:
                            abandons += 1
                            break
                        ux = tpos[c_yoff[a] + q]
                        for r in range(cnt):
                            out_u[emitted] = ux
                            out_v[emitted] = tpos[base + r]
                            emitted += 1
                            if emitted >= limit:
                                return emitted, abandons
    return emitted, abandons


# ---------------------------------------------------------------------------
# 4-pattern engines
# ---------------------------------------------------------------------------


@njit(inline="always", **NB_OPTS)
def _sel_val(moff, mlen, mvals, nt, x1, x2, y1, y2, rank):
    """rank-th smallest value among rectangle points (mirror-tree select)."""
    return select_by_location(moff, mlen, mvals, nt, y1, y2, x1, x2, rank)


@njit(**NB_OPTS)
def count4_family(pat, vals, inv,
                  toff, tlen, tvals, moff, mlen, mvals, nt,
                  eps, exact, check_mono, lo_i, hi_i):
    """The two-stage monotone engines for 1324 (pat 0), 1342 (1), 1423 (2),
    1432 (3).

    Per fixed anchor position, two nested candidate scans whose completion
    counts are provably monotone (so each is either fully enumerated in exact
    mode or probed on a Birge schedule with stage accuracy eps/3), with an
    exact rectangle count innermost.  Returns (total, monotonicity
    violations); the violation counter is only meaningful in exact mode.
    """
    n = vals.size
    total = 0.0
    viol = 0
    eps_s = eps / 3.0
    for i in range(lo_i, hi_i):
        vi = vals[i]
        # level B rectangle and iteration order (True = iterate ascending)
        if pat == 0:      # 1324: fix "3"; B = "4" by position, counts nondecreasing
            bx1, bx2, by1, by2 = i + 1, n - 1, vi + 1, n - 1
            b_axis_pos, b_asc = True, False
        elif pat == 1:    # 1342: fix "3"; B = "4" by position, counts nonincreasing
            bx1, bx2, by1, by2 = i + 1, n - 1, vi + 1, n - 1
            b_axis_pos, b_asc = True, True
        elif pat == 2:    # 1423: fix "2"; B = "3" by value, counts nonincreasing
            bx1, bx2, by1, by2 = i + 1, n - 1, vi + 1, n - 1
            b_axis_pos, b_asc = False, True
        else:             # 1432: fix "3"; B = "2" by value, counts nondecreasing
            bx1, bx2, by1, by2 = i + 1, n - 1, 0, vi - 1
            b_axis_pos, b_asc = False, False
        NB = count_rect(toff, tlen, tvals, nt, bx1, bx2, by1, by2)
        if NB == 0:
            continue
        deltaB = birge_delta(NB, eps_s)
        gB = 1.0
        cumB = 0
        prev_f = -1.0
        while cumB < NB:
            if exact:
                wB = 1
                cumB += 1
            else:
                wB = int(gB)
                if wB < 1:
                    wB = 1
                if cumB + wB > NB:
                    wB = NB - cumB
                cumB += wB
                gB *= 1.0 + deltaB
            rank = cumB if b_asc else NB - cumB + 1
            if b_axis_pos:
                pb = select_by_location(toff, tlen, tvals, nt, bx1, bx2, by1, by2, rank)
                vb = vals[pb]
            else:
                vb = _sel_val(moff, mlen, mvals, nt, bx1, bx2, by1, by2, rank)
                pb = inv[vb]
            # level C rectangle
            if pat == 0:      # C = "2" by value, counts nondecreasing; D left-below "2"
                cx1, cx2, cy1, cy2 = i + 1, pb - 1, 0, vi - 1
                c_axis_pos, c_asc = False, False
            elif pat == 1:    # C = "2" by value, counts nondecreasing
                cx1, cx2, cy1, cy2 = pb + 1, n - 1, 0, vi - 1
                c_axis_pos, c_asc = False, False
            elif pat == 2:    # C = "4" by position, counts nondecreasing
                cx1, cx2, cy1, cy2 = 0, i - 1, vb + 1, n - 1
                c_axis_pos, c_asc = True, False
            else:             # 1432: C = "4" by position, counts nondecreasing
                cx1, cx2, cy1, cy2 = 0, i - 1, vi + 1, n - 1
                c_axis_pos, c_asc = True, False
            NC = count_rect(toff, tlen, tvals, nt, cx1, cx2, cy1, cy2)
            fval = 0.0
            if NC > 0:
                deltaC = birge_delta(NC, eps_s)
                gC = 1.0
                cumC = 0
                prev_d = -1.0
                while cumC < NC:
                    if exact:
                        wC = 1
                        cumC += 1
                    else:
                        wC = int(gC)
                        if wC < 1:
                            wC = 1
                        if cumC + wC > NC:
                            wC = NC - cumC
                        cumC += wC
                        gC *= 1.0 + deltaC
                    rankC = cumC if c_asc else NC - cumC + 1
                    if c_axis_pos:
                        pc = select_by_location(toff, tlen, tvals, nt, cx1, cx2, cy1, cy2, rankC)
                        vc = vals[pc]
                    else:
                        vc = _sel_val(moff, mlen, mvals, nt, cx1, cx2, cy1, cy2, rankC)
                        pc = inv[vc]
                    if pat == 0 or pat == 1:
                        d = count_rect(toff, tlen, tvals, nt, 0, i - 1, 0, vc - 1)
                    elif pat == 2:
                        d = count_rect(toff, tlen, tvals, nt, 0, pc - 1, 0, vi - 1)
                    else:
                        d = count_rect(toff, tlen, tvals, nt, 0, pc - 1, 0, vb - 1)
                    if check_mono and exact:
                        if prev_d >= 0.0 and d > prev_d:
                            viol += 1
                        prev_d = float(d)
                    fval += wC * float(d)
            if check_mono and exact:
                if prev_f >= 0.0 and fval > prev_f + 1e-9:
                    viol += 1
                prev_f = fval
            total += wB * fval
    return total, viol


@njit(**NB_OPTS)
def count_2413(vals, inv,
               toff, tlen, tvals, moff, mlen, mvals, nt,
               eps, exact, check_mono, lo_i, hi_i, tally, do_tally):
    """Bucket/separator engine for 2413.

    Cells are (anchor position i, bit level j, heaviness).  4-heavy cells fix
    the "4" at i and need bit j of i to be 0 (candidates for "3" live in the
    right-neighbor bucket); 3-heavy cells fix the "3" and mirror this.  Each
    cell runs two nested monotone scans at stage accuracy eps/3 with an exact
    rectangle count innermost.  ``tally`` (when do_tally) receives per-cell
    exact counts laid out as ((i - lo_i) * L + j) * 2 + heavy.
    """
    n = vals.size
    total = 0.0
    viol = 0
    eps_s = eps / 3.0
    L = 0
    while (1 << L) < nt:
        L += 1
    for i in range(lo_i, hi_i):
        vi = vals[i]
        for j in range(L):
            blk = 1 << j
            for heavy in range(2):
                # heavy=1: 4-heavy (i is the "4"); heavy=0: 3-heavy (i is the "3")
                if heavy == 1:
                    if (i >> j) & 1:
                        continue
                    b0_hi = ((i >> j) << j) + blk - 1
                    xx1, xx2 = b0_hi + 1, b0_hi + blk      # neighbor bucket (right)
                    xy1, xy2 = 0, vi - 1                   # "3" candidates: below vi
                    x_axis_pos, x_asc = False, False       # by value, counts nondecreasing
                else:
                    if not ((i >> j) & 1):
                        continue
                    b0_lo = (i >> j) << j
                    xx1, xx2 = b0_lo - blk, b0_lo - 1      # neighbor bucket (left)
                    xy1, xy2 = vi + 1, n - 1               # "4" candidates: above vi
                    x_axis_pos, x_asc = True, False        # by position, counts nondecreasing -> iterate desc
                NX = count_rect(toff, tlen, tvals, nt, xx1, xx2, xy1, xy2)
                if NX == 0:
                    if do_tally:
                        tally[((i - lo_i) * L + j) * 2 + heavy] = 0
                    continue
                cell = 0.0
                deltaX = birge_delta(NX, eps_s)
                gX = 1.0
                cumX = 0
                prev_f = -1.0
                while cumX < NX:
                    if exact:
                        wX = 1
                        cumX += 1
                    else:
                        wX = int(gX)
                        if wX < 1:
                            wX = 1
                        if cumX + wX > NX:
                            wX = NX - cumX
                        cumX += wX
                        gX *= 1.0 + deltaX
                    rank = cumX if x_asc else NX - cumX + 1
                    if x_axis_pos:
                        px = select_by_location(toff, tlen, tvals, nt, xx1, xx2, xy1, xy2, rank)
                        vx = vals[px]
                    else:
                        vx = _sel_val(moff, mlen, mvals, nt, xx1, xx2, xy1, xy2, rank)
                        px = inv[vx]
                    # inner: candidates for "1", by value ascending (counts nonincreasing)
                    if heavy == 1:
                        yx1, yx2 = i + 1, b0_hi
                        yy1, yy2 = 0, vx - 1
                    else:
                        yx1, yx2 = (i >> j) << j, i - 1
                        yy1, yy2 = 0, vi - 1
                    NY = count_rect(toff, tlen, tvals, nt, yx1, yx2, yy1, yy2)
                    fval = 0.0
                    if NY > 0:
                        deltaY = birge_delta(NY, eps_s)
                        gY = 1.0
                        cumY = 0
                        prev_d = -1.0
                        while cumY < NY:
                            if exact:
                                wY = 1
                                cumY += 1
                            else:
                                wY = int(gY)
                                if wY < 1:
                                    wY = 1
                                if cumY + wY > NY:
                                    wY = NY - cumY
                                cumY += wY
                                gY *= 1.0 + deltaY
                            vy = _sel_val(moff, mlen, mvals, nt, yx1, yx2, yy1, yy2, cumY)
                            if heavy == 1:
                                d = count_rect(toff, tlen, tvals, nt, 0, i - 1, vy + 1, vx - 1)
                            else:
                                d = count_rect(toff, tlen, tvals, nt, 0, px - 1, vy + 1, vi - 1)
                            if check_mono and exact:
                                if prev_d >= 0.0 and d > prev_d:
                                    viol += 1
                                prev_d = float(d)
                            fval += wY * float(d)
                    if check_mono and exact:
                        if prev_f >= 0.0 and fval > prev_f + 1e-9:
                            viol += 1
                        prev_f = fval
                    cell += wX * fval
                if do_tally:
                    tally[((i - lo_i) * L + j) * 2 + heavy] = int(cell + 0.5)
                total += cell
    return total, viol


@njit(**NB_OPTS)
def count_1234(vals, inv,
               toff, tlen, tvals, moff, mlen, mvals, nt,
               tpos, olo, ohi,
               iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12, i_lo, i_hi, xbuf,
               eps, exact, lo_i, hi_i):
    """1234 = fix "3"; the "4" scan is constant per anchor (its Birge sum
    collapses to candidate-count times one value), so the contribution is the
    count of up-right points times one 12-range query on the lower-left
    rectangle."""
    n = vals.size
    total = 0.0
    eps_q = eps / 2.0
    for i in range(lo_i, hi_i):
        vi = vals[i]
        a = count_rect(toff, tlen, tvals, nt, i + 1, n - 1, vi + 1, n - 1)
        if a == 0:
            continue
        b = approx12_rect(toff, tlen, tvals, tpos, nt, olo, ohi,
                          iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12, i_lo, i_hi,
                          xbuf, 0, i - 1, 0, vi - 1, eps_q, exact)
        total += float(a) * b
    return total, 0


@njit(**NB_OPTS)
def count_1243(vals, inv,
               toff, tlen, tvals, moff, mlen, mvals, nt,
               tpos, olo, ohi,
               iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12, i_lo, i_hi, xbuf,
               eps, exact, check_mono, lo_i, hi_i):
    """1243 = fix "4"; Birge over "3" by value (counts nondecreasing), then a
    12-range query on the lower-left rectangle of the "3" candidate."""
    n = vals.size
    total = 0.0
    viol = 0
    eps_s = eps / 4.0
    for i in range(lo_i, hi_i):
        vi = vals[i]
        NM = count_rect(toff, tlen, tvals, nt, i + 1, n - 1, 0, vi - 1)
        if NM == 0:
            continue
        delta = birge_delta(NM, eps_s)
        g = 1.0
        cum = 0
        prev = -1.0
        while cum < NM:
            if exact:
                w = 1
                cum += 1
            else:
                w = int(g)
                if w < 1:
                    w = 1
                if cum + w > NM:
                    w = NM - cum
                cum += w
                g *= 1.0 + delta
            vm = _sel_val(moff, mlen, mvals, nt, i + 1, n - 1, 0, vi - 1, NM - cum + 1)
            q = approx12_rect(toff, tlen, tvals, tpos, nt, olo, ohi,
                              iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12, i_lo, i_hi,
                              xbuf, 0, i - 1, 0, vm - 1, eps_s, exact)
            if check_mono and exact:
                if prev >= 0.0 and q > prev + 1e-9:
                    viol += 1
                prev = q
            total += w * q
    return total, viol


@njit(**NB_OPTS)
def count_2143(vals, inv,
               toff, tlen, tvals, moff, mlen, mvals, nt,
               rtoff, rtlen, rtvals, rtpos, rolo, rohi,
               riroot, ri_ylo, ri_yhi, ri_yoff, ri_ylen, ri_xoff, ri_c12, ri_lo, ri_hi, rxbuf,
               eps, exact, check_mono, lo_i, hi_i):
    """2143 = fix "1"; Birge over "2" by value (counts nonincreasing), then a
    21-range query up-right, answered on the x-reversed structure (r*)."""
    n = vals.size
    total = 0.0
    viol = 0
    eps_s = eps / 4.0
    for i in range(lo_i, hi_i):
        vi = vals[i]
        NJ = count_rect(toff, tlen, tvals, nt, 0, i - 1, vi + 1, n - 1)
        if NJ == 0:
            continue
        delta = birge_delta(NJ, eps_s)
        g = 1.0
        cum = 0
        prev = -1.0
        while cum < NJ:
            if exact:
                w = 1
                cum += 1
            else:
                w = int(g)
                if w < 1:
                    w = 1
                if cum + w > NJ:
                    w = NJ - cum
                cum += w
                g *= 1.0 + delta
            vj = _sel_val(moff, mlen, mvals, nt, 0, i - 1, vi + 1, n - 1, cum)
            # 21-count in (i+1 .. n-1) x (vj+1 .. n-1) = 12-count on reversed x
            q = approx12_rect(rtoff, rtlen, rtvals, rtpos, nt, rolo, rohi,
                              riroot, ri_ylo, ri_yhi, ri_yoff, ri_ylen, ri_xoff, ri_c12,
                              ri_lo, ri_hi, rxbuf,
                              0, n - 2 - i, vj + 1, n - 1, eps_s, exact)
            if check_mono and exact:
                if prev >= 0.0 and q > prev + 1e-9:
                    viol += 1
                prev = q
            total += w * q
    return total, viol


# ---------------------------------------------------------------------------
# 5-pattern executor: separator cells x configurations x recipes
# ---------------------------------------------------------------------------


@njit(**NB_OPTS)
def _xdom_pairs_rect(toff, tlen, tvals, moff, mlen, mvals, nt,
                     ax1, ax2, ay1, ay2, bx1, bx2, by1, by2, eps, exact):
    """Pairs (qa, qb) with qa.x < qb.x across two rectangles whose value
    ranges already enforce the value constraint.  One Birge stage."""
    NA = count_rect(toff, tlen, tvals, nt, ax1, ax2, ay1, ay2)
    if NA == 0:
        return 0.0
    total = 0.0
    if exact:
        for r in range(1, NA + 1):
            pa = select_by_location(toff, tlen, tvals, nt, ax1, ax2, ay1, ay2, r)
            c = count_rect(toff, tlen, tvals, nt, pa + 1 if pa + 1 > bx1 else bx1, bx2, by1, by2)
            total += c
        return total
    delta = birge_delta(NA, eps)
    g = 1.0
    cum = 0
    while cum < NA:
        w = int(g)
        if w < 1:
            w = 1
        if cum + w > NA:
            w = NA - cum
        cum += w
        pa = select_by_location(toff, tlen, tvals, nt, ax1, ax2, ay1, ay2, cum)
        c = count_rect(toff, tlen, tvals, nt, pa + 1 if pa + 1 > bx1 else bx1, bx2, by1, by2)
        total += w * c
        g *= 1.0 + delta
    return total


@njit(**NB_OPTS)
def _ydom_pairs_rect(toff, tlen, tvals, moff, mlen, mvals, nt,
                     ax1, ax2, ay1, ay2, bx1, bx2, by1, by2, eps, exact):
    """Pairs (qa, qb) with qa.y < qb.y across two rectangles whose position
    ranges already enforce the position constraint."""
    NA = count_rect(toff, tlen, tvals, nt, ax1, ax2, ay1, ay2)
    if NA == 0:
        return 0.0
    total = 0.0
    if exact:
        for r in range(1, NA + 1):
            va = _sel_val(moff, mlen, mvals, nt, ax1, ax2, ay1, ay2, r)
            c = count_rect(toff, tlen, tvals, nt, bx1, bx2, va + 1 if va + 1 > by1 else by1, by2)
            total += c
        return total
    delta = birge_delta(NA, eps)
    g = 1.0
    cum = 0
    while cum < NA:
        w = int(g)
        if w < 1:
            w = 1
        if cum + w > NA:
            w = NA - cum
        cum += w
        va = _sel_val(moff, mlen, mvals, nt, ax1, ax2, ay1, ay2, cum)
        c = count_rect(toff, tlen, tvals, nt, bx1, bx2, va + 1 if va + 1 > by1 else by1, by2)
        total += w * c
        g *= 1.0 + delta
    return total


@njit(**NB_OPTS)
def _factor_2413(vals, tvals, tpos, yoff, ylen, xlo, xhi, ylo, yhi, want_3142, eps, exact):
    """Count 2413 (or 3142) copies among the points of a node slice falling in
    the block rectangle; extracts the sub-permutation and runs the bucket
    engine on it."""
    # gather block points in ascending value order from the y slice
    cnt = 0
    for q in range(ylen):
        v = tvals[yoff + q]
        p = tpos[yoff + q]
        if ylo <= v <= yhi and xlo <= p <= xhi:
            cnt += 1
    if cnt < 4:
        return 0.0
    pos_arr = np.empty(cnt, dtype=np.int64)
    o = 0
    for q in range(ylen):
        v = tvals[yoff + q]
        p = tpos[yoff + q]
        if ylo <= v <= yhi and xlo <= p <= xhi:
            pos_arr[o] = p
            o += 1
    # value rank of pos_arr[q] is q (gathered in ascending value order), so
    # sub[position_rank] = value rank of the point with that position rank
    order = np.argsort(pos_arr)
    sub = np.empty(cnt, dtype=np.int64)
    for position_rank in range(cnt):
        sub[position_rank] = order[position_rank]
    if want_3142:
        rev = np.empty(cnt, dtype=np.int64)
        for q in range(cnt):
            rev[q] = sub[cnt - 1 - q]
        sub = rev
    nt2 = 1
    while nt2 < cnt:
        nt2 *= 2
    toff2, tlen2, tvals2, tpos2 = build_tree(sub, nt2)
    inv2 = np.empty(cnt, dtype=np.int64)
    for q in range(cnt):
        inv2[sub[q]] = q
    moff2, mlen2, mvals2, mpos2 = build_tree(inv2, nt2)
    dummy = np.zeros(1, dtype=np.int64)
    total, _ = count_2413(sub, inv2, toff2, tlen2, tvals2, moff2, mlen2, mvals2, nt2,
                          eps, exact, False, 0, cnt, dummy, False)
    return total


ROLE5_STEP = 0
ROLE5_SINGLETON = 1
ROLE5_LEAD = 2
ROLE5_TAIL = 3
PK_12 = 0
PK_21 = 1
PK_XDOM = 2
PK_YDOM = 3


@njit(**NB_OPTS)
def _terminal_product(RX1, RX2, RY1, RY2, lvl, s_elem, s_role, s_pkind, pos_of,
                      toff, tlen, tvals, tpos, moff, mlen, mvals, nt, olo, ohi,
                      iroot, iylo, iyhi, iyoff, iylen, ixoff, ic12, ilo, ihi, xbuf,
                      rtoff, rtlen, rtvals, rtpos, rolo, rohi,
                      riroot, riylo, riyhi, riyoff, riylen, rixoff, ric12, rilo, rihi, rxbuf,
                      n, eps_q, exact):
    """Product of the terminal factors (singleton counts and pair queries)
    with all fixed/stepped coordinates already folded into the level-lvl
    rectangles."""
    prod = 1.0
    q = 0
    while q < 4:
        e = s_elem[q]
        role = s_role[q]
        if role == ROLE5_STEP or role == ROLE5_TAIL:
            q += 1
            continue
        if role == ROLE5_SINGLETON:
            c = count_rect(toff, tlen, tvals, nt, RX1[lvl, e], RX2[lvl, e], RY1[lvl, e], RY2[lvl, e])
            prod *= c
            q += 1
        else:
            u = s_elem[q + 1]
            kind = s_pkind[q]
            x1 = max(RX1[lvl, e], RX1[lvl, u])
            x2 = min(RX2[lvl, e], RX2[lvl, u])
            y1 = max(RY1[lvl, e], RY1[lvl, u])
            y2 = min(RY2[lvl, e], RY2[lvl, u])
            if kind == PK_12:
                v = approx12_rect(toff, tlen, tvals, tpos, nt, olo, ohi,
                                  iroot, iylo, iyhi, iyoff, iylen, ixoff, ic12, ilo, ihi,
                                  xbuf, x1, x2, y1, y2, eps_q, exact)
            elif kind == PK_21:
                if x1 > x2 or y1 > y2:
                    v = 0.0
                else:
                    v = approx12_rect(rtoff, rtlen, rtvals, rtpos, nt, rolo, rohi,
                                      riroot, riylo, riyhi, riyoff, riylen, rixoff, ric12,
                                      rilo, rihi, rxbuf,
                                      n - 1 - x2, n - 1 - x1, y1, y2, eps_q, exact)
            elif kind == PK_XDOM:
                a = e if pos_of[e] < pos_of[u] else u
                b = u if a == e else e
                v = _xdom_pairs_rect(toff, tlen, tvals, moff, mlen, mvals, nt,
                                     RX1[lvl, a], RX2[lvl, a], RY1[lvl, a], RY2[lvl, a],
                                     RX1[lvl, b], RX2[lvl, b], RY1[lvl, b], RY2[lvl, b],
                                     eps_q, exact)
            else:
                a = e if e < u else u
                b = u if a == e else e
                v = _ydom_pairs_rect(toff, tlen, tvals, moff, mlen, mvals, nt,
                                     RX1[lvl, a], RX2[lvl, a], RY1[lvl, a], RY2[lvl, a],
                                     RX1[lvl, b], RX2[lvl, b], RY1[lvl, b], RY2[lvl, b],
                                     eps_q, exact)
            prod *= v
            q += 2
        if prod == 0.0:
            return 0.0
    return prod


@njit(inline="always", **NB_OPTS)
def _fetch_cand(axis, asc, rI, N, x1, x2, y1, y2,
                toff, tlen, tvals, moff, mlen, mvals, nt, vals, inv):
    """Candidate (position, value) at iteration rank rI (1-based) for a scan
    along the given axis/direction."""
    rank = rI if asc else N - rI + 1
    if axis == 0:
        pe = select_by_location(toff, tlen, tvals, nt, x1, x2, y1, y2, rank)
        return pe, vals[pe]
    ve = _sel_val(moff, mlen, mvals, nt, x1, x2, y1, y2, rank)
    return inv[ve], ve


@njit(inline="always", **NB_OPTS)
def _push_caps(RX1, RX2, RY1, RY2, src, dst, g, pg, vg, pos_of):
    """Copy rectangle state src -> dst and intersect with the half-planes
    induced by fixing element g at point (pg, vg).  Caps implied by geometry
    or transitivity are no-ops, so applying them uniformly is safe."""
    for e in range(1, 6):
        RX1[dst, e] = RX1[src, e]
        RX2[dst, e] = RX2[src, e]
        RY1[dst, e] = RY1[src, e]
        RY2[dst, e] = RY2[src, e]
    for e in range(1, 6):
        if e == g:
            continue
        if pos_of[e] < pos_of[g]:
            if pg - 1 < RX2[dst, e]:
                RX2[dst, e] = pg - 1
        else:
            if pg + 1 > RX1[dst, e]:
                RX1[dst, e] = pg + 1
        if e < g:
            if vg - 1 < RY2[dst, e]:
                RY2[dst, e] = vg - 1
        else:
            if vg + 1 > RY1[dst, e]:
                RY1[dst, e] = vg + 1


@njit(**NB_OPTS)
def count5_run(vals, inv,
               toff, tlen, tvals, tpos, moff, mlen, mvals, nt, olo, ohi,
               iroot, iylo, iyhi, iyoff, iylen, ixoff, ic12, ilo, ihi, iouter, xbuf,
               rtoff, rtlen, rtvals, rtpos, rolo, rohi,
               riroot, riylo, riyhi, riyoff, riylen, rixoff, ric12, rilo, rihi, rxbuf,
               cfg_kind, cfg_p, cfg_m, cfg_fixed,
               seq_elem, seq_role, seq_axis, seq_asc, seq_pkind, cfg_stages,
               pos_of, eps, exact, check_mono, cell_lo, cell_hi, tally, do_tally):
    """Count the 5-pattern copies charged to separator cells [cell_lo, cell_hi).

    A cell is a non-leaf inner node w of a non-leaf outer node: the copy must
    straddle both the vertical cut of w's outer node and the horizontal cut
    of w, and lie inside w's rectangle.  Per cell, all 16 configurations run
    their recipes (or the factorization fallback); contributions are disjoint
    across (cell, configuration), so stage errors never compound across
    cells.  Returns (total, monotonicity violations); per-(cell, config)
    tallies go to ``tally`` when requested (exact mode only).
    """
    n = vals.size
    total = 0.0
    viol = 0
    RX1 = np.empty((5, 6), dtype=np.int64)
    RX2 = np.empty((5, 6), dtype=np.int64)
    RY1 = np.empty((5, 6), dtype=np.int64)
    RY2 = np.empty((5, 6), dtype=np.int64)
    st_slot = np.empty(3, dtype=np.int64)
    for w in range(cell_lo, cell_hi):
        t = iouter[w]
        if olo[t] == ohi[t]:
            continue
        wylo = iylo[w]
        wyhi = iyhi[w]
        if wylo == wyhi or iylen[w] < 5:
            continue
        xmid = (olo[t] + ohi[t]) // 2
        ymid = (wylo + wyhi) // 2
        for cfg in range(16):
            kind = cfg_kind[cfg]
            if kind < 0:
                continue
            p = cfg_p[cfg]
            m = cfg_m[cfg]
            cell_val = 0.0
            if kind >= 1:
                if p == 1:
                    lx1, lx2, bx1, bx2 = olo[t], xmid, xmid + 1, ohi[t]
                else:
                    lx1, lx2, bx1, bx2 = xmid + 1, ohi[t], olo[t], xmid
                if m == 1:
                    ly1, ly2, by1, by2 = wylo, ymid, ymid + 1, wyhi
                else:
                    ly1, ly2, by1, by2 = ymid + 1, wyhi, wylo, ymid
                lone = count_rect(toff, tlen, tvals, nt, lx1, lx2, ly1, ly2)
                if lone > 0:
                    blk = _factor_2413(vals, tvals, tpos, iyoff[w], iylen[w],
                                       bx1, bx2, by1, by2, kind == 2, eps, exact)
                    cell_val = lone * blk
            else:
                # base quadrant rectangles (level 0)
                empty = False
                for e in range(1, 6):
                    if pos_of[e] <= p:
                        RX1[0, e] = olo[t]
                        RX2[0, e] = xmid
                    else:
                        RX1[0, e] = xmid + 1
                        RX2[0, e] = ohi[t]
                    if e <= m:
                        RY1[0, e] = wylo
                        RY2[0, e] = ymid
                    else:
                        RY1[0, e] = ymid + 1
                        RY2[0, e] = wyhi
                for e in range(1, 6):
                    if count_rect(toff, tlen, tvals, nt, RX1[0, e], RX2[0, e],
                                  RY1[0, e], RY2[0, e]) == 0:
                        empty = True
                        break
                if not empty:
                    s = cfg_stages[cfg]
                    eps_q = eps / (2.0 * s) if s > 0 else eps
                    nst = 0
                    for q in range(4):
                        if seq_role[cfg, q] == ROLE5_STEP:
                            st_slot[nst] = q
                            nst += 1
                    f = cfg_fixed[cfg]
                    NF = count_rect(toff, tlen, tvals, nt, RX1[0, f], RX2[0, f],
                                    RY1[0, f], RY2[0, f])
                    for rf in range(1, NF + 1):
                        pf = select_by_location(toff, tlen, tvals, nt, RX1[0, f],
                                                RX2[0, f], RY1[0, f], RY2[0, f], rf)
                        vf = vals[pf]
                        _push_caps(RX1, RX2, RY1, RY2, 0, 1, f, pf, vf, pos_of)
                        # ---- up to three nested monotone scans ----
                        if nst == 0:
                            v0 = _terminal_product(
                                RX1, RX2, RY1, RY2, 1, seq_elem[cfg], seq_role[cfg],
                                seq_pkind[cfg], pos_of,
                                toff, tlen, tvals, tpos, moff, mlen, mvals, nt, olo, ohi,
                                iroot, iylo, iyhi, iyoff, iylen, ixoff, ic12, ilo, ihi, xbuf,
                                rtoff, rtlen, rtvals, rtpos, rolo, rohi,
                                riroot, riylo, riyhi, riyoff, riylen, rixoff, ric12,
                                rilo, rihi, rxbuf, n, eps_q, exact)
                        else:
                            q0 = st_slot[0]
                            e0 = seq_elem[cfg, q0]
                            N0 = count_rect(toff, tlen, tvals, nt, RX1[1, e0], RX2[1, e0],
                                            RY1[1, e0], RY2[1, e0])
                            v0 = 0.0
                            if N0 > 0:
                                d0 = birge_delta(N0, eps_q)
                                g0 = 1.0
                                c0 = 0
                                prev0 = -1.0
                                while c0 < N0:
                                    if exact:
                                        w0 = 1
                                        c0 += 1
                                    else:
                                        w0 = int(g0)
                                        if w0 < 1:
                                            w0 = 1
                                        if c0 + w0 > N0:
                                            w0 = N0 - c0
                                        c0 += w0
                                        g0 *= 1.0 + d0
                                    p0, vv0 = _fetch_cand(seq_axis[cfg, q0], seq_asc[cfg, q0] == 1,
                                                          c0, N0, RX1[1, e0], RX2[1, e0],
                                                          RY1[1, e0], RY2[1, e0],
                                                          toff, tlen, tvals, moff, mlen, mvals,
                                                          nt, vals, inv)
                                    _push_caps(RX1, RX2, RY1, RY2, 1, 2, e0, p0, vv0, pos_of)
                                    if nst == 1:
                                        v1 = _terminal_product(
                                            RX1, RX2, RY1, RY2, 2, seq_elem[cfg], seq_role[cfg],
                                            seq_pkind[cfg], pos_of,
                                            toff, tlen, tvals, tpos, moff, mlen, mvals, nt, olo, ohi,
                                            iroot, iylo, iyhi, iyoff, iylen, ixoff, ic12, ilo, ihi, xbuf,
                                            rtoff, rtlen, rtvals, rtpos, rolo, rohi,
                                            riroot, riylo, riyhi, riyoff, riylen, rixoff, ric12,
                                            rilo, rihi, rxbuf, n, eps_q, exact)
                                    else:
                                        q1 = st_slot[1]
                                        e1 = seq_elem[cfg, q1]
                                        N1 = count_rect(toff, tlen, tvals, nt, RX1[2, e1], RX2[2, e1],
                                                        RY1[2, e1], RY2[2, e1])
                                        v1 = 0.0
                                        if N1 > 0:
                                            d1 = birge_delta(N1, eps_q)
                                            g1 = 1.0
                                            c1 = 0
                                            prev1 = -1.0
                                            while c1 < N1:
                                                if exact:
                                                    w1 = 1
                                                    c1 += 1
                                                else:
                                                    w1 = int(g1)
                                                    if w1 < 1:
                                                        w1 = 1
                                                    if c1 + w1 > N1:
                                                        w1 = N1 - c1
                                                    c1 += w1
                                                    g1 *= 1.0 + d1
                                                p1, vv1 = _fetch_cand(seq_axis[cfg, q1], seq_asc[cfg, q1] == 1,
                                                                      c1, N1, RX1[2, e1], RX2[2, e1],
                                                                      RY1[2, e1], RY2[2, e1],
                                                                      toff, tlen, tvals, moff, mlen, mvals,
                                                                      nt, vals, inv)
                                                _push_caps(RX1, RX2, RY1, RY2, 2, 3, e1, p1, vv1, pos_of)
                                                if nst == 2:
                                                    v2 = _terminal_product(
                                                        RX1, RX2, RY1, RY2, 3, seq_elem[cfg], seq_role[cfg],
                                                        seq_pkind[cfg], pos_of,
                                                        toff, tlen, tvals, tpos, moff, mlen, mvals, nt, olo, ohi,
                                                        iroot, iylo, iyhi, iyoff, iylen, ixoff, ic12, ilo, ihi, xbuf,
                                                        rtoff, rtlen, rtvals, rtpos, rolo, rohi,
                                                        riroot, riylo, riyhi, riyoff, riylen, rixoff, ric12,
                                                        rilo, rihi, rxbuf, n, eps_q, exact)
                                                else:
                                                    q2 = st_slot[2]
                                                    e2 = seq_elem[cfg, q2]
                                                    N2 = count_rect(toff, tlen, tvals, nt, RX1[3, e2], RX2[3, e2],
                                                                    RY1[3, e2], RY2[3, e2])
                                                    v2 = 0.0
                                                    if N2 > 0:
                                                        d2 = birge_delta(N2, eps_q)
                                                        g2 = 1.0
                                                        c2 = 0
                                                        prev2 = -1.0
                                                        while c2 < N2:
                                                            if exact:
                                                                w2 = 1
                                                                c2 += 1
                                                            else:
                                                                w2 = int(g2)
                                                                if w2 < 1:
                                                                    w2 = 1
                                                                if c2 + w2 > N2:
                                                                    w2 = N2 - c2
                                                                c2 += w2
                                                                g2 *= 1.0 + d2
                                                            p2, vv2 = _fetch_cand(seq_axis[cfg, q2], seq_asc[cfg, q2] == 1,
                                                                                  c2, N2, RX1[3, e2], RX2[3, e2],
                                                                                  RY1[3, e2], RY2[3, e2],
                                                                                  toff, tlen, tvals, moff, mlen, mvals,
                                                                                  nt, vals, inv)
                                                            _push_caps(RX1, RX2, RY1, RY2, 3, 4, e2, p2, vv2, pos_of)
                                                            v3 = _terminal_product(
                                                                RX1, RX2, RY1, RY2, 4, seq_elem[cfg], seq_role[cfg],
                                                                seq_pkind[cfg], pos_of,
                                                                toff, tlen, tvals, tpos, moff, mlen, mvals, nt, olo, ohi,
                                                                iroot, iylo, iyhi, iyoff, iylen, ixoff, ic12, ilo, ihi, xbuf,
                                                                rtoff, rtlen, rtvals, rtpos, rolo, rohi,
                                                                riroot, riylo, riyhi, riyoff, riylen, rixoff, ric12,
                                                                rilo, rihi, rxbuf, n, eps_q, exact)
                                                            if check_mono and exact:
                                                                if prev2 >= 0.0 and v3 > prev2 + 1e-9:
                                                                    viol += 1
                                                                prev2 = v3
                                                            v2 += w2 * v3
                                                            if exact and not check_mono and v3 == 0.0:
                                                                break
                                                if check_mono and exact:
                                                    if prev1 >= 0.0 and v2 > prev1 + 1e-9:
                                                        viol += 1
                                                    prev1 = v2
                                                v1 += w1 * v2
                                                if exact and not check_mono and v2 == 0.0:
                                                    break
                                    if check_mono and exact:
                                        if prev0 >= 0.0 and v1 > prev0 + 1e-9:
                                            viol += 1
                                        prev0 = v1
                                    v0 += w0 * v1
                                    if exact and not check_mono and v1 == 0.0:
                                        break
                        cell_val += v0
            if do_tally:
                tally[(w - cell_lo) * 16 + cfg] = int(cell_val + 0.5)
            total += cell_val
    return total, viol


@njit(**NB_OPTS)
def oracle_enumerate_pattern(vals, pat, out):
    """All copies of one k-pattern (k in {4, 5}) by pruned enumeration.

    ``pat`` holds the pattern values (1..k); copies are written to ``out``
    (shape [cap, k], 0-based positions) and the count is returned.  Ground
    truth for the charging/bijection tests at sizes where the k! tally pass
    would not identify individual copies.
    """
    n = vals.size
    k = pat.size
    cnt = 0
    if k == 4:
        for i1 in range(n):
            for i2 in range(i1 + 1, n):
                if (vals[i1] < vals[i2]) != (pat[0] < pat[1]):
                    continue
                for i3 in range(i2 + 1, n):
                    if (vals[i1] < vals[i3]) != (pat[0] < pat[2]):
                        continue
                    if (vals[i2] < vals[i3]) != (pat[1] < pat[2]):
                        continue
                    for i4 in range(i3 + 1, n):
                        if (vals[i1] < vals[i4]) != (pat[0] < pat[3]):
                            continue
                        if (vals[i2] < vals[i4]) != (pat[1] < pat[3]):
                            continue
                        if (vals[i3] < vals[i4]) != (pat[2] < pat[3]):
                            continue
                        out[cnt, 0] = i1
                        out[cnt, 1] = i2
                        out[cnt, 2] = i3
                        out[cnt, 3] = i4
                        cnt += 1
        return cnt
    for i1 in range(n):
        for i2 in range(i1 + 1, n):
            if (vals[i1] < vals[i2]) != (pat[0] < pat[1]):
                continue
            for i3 in range(i2 + 1, n):
                if (vals[i1] < vals[i3]) != (pat[0] < pat[2]):
                    continue
                if (vals[i2] < vals[i3]) != (pat[1] < pat[2]):
                    continue
                for i4 in range(i3 + 1, n):
                    if (vals[i1] < vals[i4]) != (pat[0] < pat[3]):
                        continue
                    if (vals[i2] < vals[i4]) != (pat[1] < pat[3]):
                        continue
                    if (vals[i3] < vals[i4]) != (pat[2] < pat[3]):
                        continue
                    for i5 in range(i4 + 1, n):
                        if (vals[i1] < vals[i5]) != (pat[0] < pat[4]):
                            continue
                        if (vals[i2] < vals[i5]) != (pat[1] < pat[4]):
                            continue
                        if (vals[i3] < vals[i5]) != (pat[2] < pat[4]):
                            continue
                        if (vals[i4] < vals[i5]) != (pat[3] < pat[4]):
                            continue
                        out[cnt, 0] = i1
                        out[cnt, 1] = i2
                        out[cnt, 2] = i3
                        out[cnt, 3] = i4
                        out[cnt, 4] = i5
                        cnt += 1
    return cnt
