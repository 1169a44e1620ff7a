"""(1+eps)-approximate counting for all 120 patterns of length 5.

Every copy is charged to exactly one separator cell: the inner node w (of
outer node v) such that the copy lies in w's rectangle, straddles the
vertical cut of v, and straddles the horizontal cut of w.  Within a cell,
copies split by configuration (p, m): how many of the five elements lie left
of the vertical cut (a position prefix of the pattern) and how many below
the horizontal cut (a value prefix).  Each (pattern, configuration) pair
executes the recipe from the shipped table: iterate one fixed element, scan
up to two further elements on Birge schedules, and finish with exact
rectangle counts and 12/21/dominance pair queries.

The configurations of the 13524/14253 symmetry family whose lone minimum
sits alone in a corner quadrant fall back to a factorization: the corner
point count times a 2413 (or 3142) count on the sub-permutation of the
opposite block.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels as K
from .errors import ExactOverflow, InvalidEpsilon, InvalidPattern, InvalidRecipe, MissingRecipe
from .perm import Pattern, Permutation
from .recipes import (FactorRecipe, Recipe, ROLE_PAIR_LEAD, ROLE_PAIR_TAIL, ROLE_SINGLETON,
                      ROLE_STEP, check_recipe, load_default_table)
from .structures import Workspace
from .count4 import EXACT_N_CAP

_TABLE_CACHE: dict | None = None


def default_table():
    global _TABLE_CACHE
    if _TABLE_CACHE is None:
        _TABLE_CACHE = load_default_table()
    return _TABLE_CACHE


@dataclass(frozen=True)
class SeparatorPair:
    """One vertical/horizontal separator pair: an inner node and its cuts."""

    node: int
    x_lo: int
    x_hi: int
    y_lo: int
    y_hi: int

    @property
    def x_cut(self) -> int:
        return (self.x_lo + self.x_hi) // 2

    @property
    def y_cut(self) -> int:
        return (self.y_lo + self.y_hi) // 2


def enumerate_separator_pairs(ws: Workspace) -> Iterator[SeparatorPair]:
    """One pair per (created) non-empty inner node, in build order."""
    tr = ws.main
    (iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12,
     i_aug_off, i_aug_len, i_lo, i_hi, i_outer, xbuf, augbuf, nn) = tr.inner
    for w in range(nn):
        t = int(i_outer[w])
        yield SeparatorPair(w, int(tr.olo[t]) + 1, int(tr.ohi[t]) + 1,
                            int(i_ylo[w]) + 1, int(i_yhi[w]) + 1)


def encode_tables(pattern: str, table=None):
    """Pack the 16 configuration recipes of a pattern into kernel arrays."""
    if table is None:
        table = default_table()
    pos_of = np.zeros(6, dtype=np.int64)
    for i, d in enumerate(pattern):
        pos_of[int(d)] = i + 1
    cfg_kind = np.zeros(16, dtype=np.int64)
    cfg_p = np.zeros(16, dtype=np.int64)
    cfg_m = np.zeros(16, dtype=np.int64)
    cfg_fixed = np.zeros(16, dtype=np.int64)
    seq_elem = np.zeros((16, 4), dtype=np.int64)
    seq_role = np.zeros((16, 4), dtype=np.int64)
    seq_axis = np.zeros((16, 4), dtype=np.int64)
    seq_asc = np.zeros((16, 4), dtype=np.int64)
    seq_pkind = np.zeros((16, 4), dtype=np.int64)
    cfg_stages = np.zeros(16, dtype=np.int64)
    for p in range(1, 5):
        for m in range(1, 5):
            cfg = (p - 1) * 4 + (m - 1)
            cfg_p[cfg] = p
            cfg_m[cfg] = m
            key = (pattern, p, m)
            if key not in table:
                raise MissingRecipe(f"no table entry for {key}")
            entry = table[key]
            if isinstance(entry, FactorRecipe):
                cfg_kind[cfg] = 1 if entry.block == "2413" else 2
                continue
            ok, reason = check_recipe(entry)
            if not ok:
                raise InvalidRecipe(f"table entry {key} invalid: {reason}")
            if entry.n_birge_steps > 3:
                raise InvalidRecipe(f"table entry {key} needs more than three scans")
            cfg_kind[cfg] = 0
            cfg_fixed[cfg] = entry.fixed
            for q, st in enumerate(entry.steps):
                seq_elem[cfg, q] = st.element
                seq_role[cfg, q] = st.role
                seq_axis[cfg, q] = st.axis if st.axis >= 0 else 0
                seq_asc[cfg, q] = 1 if st.ascending else 0
                seq_pkind[cfg, q] = st.pair_kind if st.pair_kind >= 0 else 0
            cfg_stages[cfg] = entry.n_stages
    return (cfg_kind, cfg_p, cfg_m, cfg_fixed, seq_elem, seq_role, seq_axis,
            seq_asc, seq_pkind, cfg_stages, pos_of)


def _kernel_args(ws: Workspace):
    tr = ws.main
    rv = ws.rev
    (iroot, iylo, iyhi, iyoff, iylen, ixoff, ic12,
     _ao, _al, ilo, ihi, iouter, xbuf, _ab, nn) = tr.inner
    (riroot, riylo, riyhi, riyoff, riylen, rixoff, ric12,
     _rao, _ral, rilo, rihi, _riout, rxbuf, _rab, _rnn) = rv.inner
    return (tr.vals, tr.inv,
            tr.toff, tr.tlen, tr.tvals, tr.tpos, tr.moff, tr.mlen, tr.mvals,
            tr.nt, tr.olo, tr.ohi,
            iroot, iylo, iyhi, iyoff, iylen, ixoff, ic12, ilo, ihi, iouter, xbuf,
            rv.toff, rv.tlen, rv.tvals, rv.tpos, rv.olo, rv.ohi,
            riroot, riylo, riyhi, riyoff, riylen, rixoff, ric12, rilo, rihi, rxbuf), nn


def count5_cells(ws: Workspace, pattern: str, epsilon: float | None,
                 check_mono: bool = False, table=None,
                 cell_lo: int = 0, cell_hi: int | None = None, tally: bool = False):
    """Run the engine over a cell range; returns (total, violations[, tally])."""
    args, nn = _kernel_args(ws)
    enc = encode_tables(pattern, table)
    exact = epsilon is None
    eps = 0.5 if exact else float(epsilon)
    hi = nn if cell_hi is None else cell_hi
    buf = np.zeros(max((hi - cell_lo) * 16, 1), dtype=np.int64)
    total, viol = K.count5_run(*args, *enc, eps, exact, check_mono,
                               cell_lo, hi, buf, tally)
    if tally:
        return total, viol, buf.reshape(hi - cell_lo, 16)
    return total, viol


def count5(p: Permutation, sigma: Pattern, epsilon: float | None = 0.1,
           table=None) -> float:
    """Count sigma-copies (k=5) within (1 +- eps); epsilon=None is exact mode."""
    if sigma.k != 5:
        raise InvalidPattern(f"count5 needs k=5, got {sigma}")
    if epsilon is not None and not (0.0 < epsilon < 1.0):
        raise InvalidEpsilon(f"epsilon must be in (0,1), got {epsilon}")
    if epsilon is None and p.n > EXACT_N_CAP:
        raise ExactOverflow(f"exact mode supports n <= {EXACT_N_CAP}, got {p.n}")
    if p.n < 5:
        return 0.0
    ws = Workspace(p)
    total, _ = count5_cells(ws, str(sigma), epsilon, table=table)
    return float(total) if epsilon is not None else float(int(round(total)))


def charge_copy(ws: Workspace, copy: tuple[int, ...]) -> tuple[int, int, int]:
    """(cell node, p, m) a copy is charged to; the test-side oracle for the
    count-once property.  ``copy`` holds 1-based positions."""
    tr = ws.main
    (iroot, i_ylo, i_yhi, _yo, _yl, _xo, _c12, _ao, _al, i_lo, i_hi,
     _iout, _xb, _ab, _nn) = tr.inner
    xs = [c - 1 for c in copy]
    vs = [int(tr.vals[x]) for x in xs]
    t = 1
    while tr.olo[t] != tr.ohi[t]:
        xmid = (int(tr.olo[t]) + int(tr.ohi[t])) // 2
        if max(xs) <= xmid:
            t = 2 * t
        elif min(xs) > xmid:
            t = 2 * t + 1
        else:
            break
    w = int(iroot[t])
    while int(i_ylo[w]) != int(i_yhi[w]):
        ymid = (int(i_ylo[w]) + int(i_yhi[w])) // 2
        if max(vs) <= ymid:
            w = int(i_lo[w])
        elif min(vs) > ymid:
            w = int(i_hi[w])
        else:
            break
    xmid = (int(tr.olo[t]) + int(tr.ohi[t])) // 2
    ymid = (int(i_ylo[w]) + int(i_yhi[w])) // 2
    p = sum(1 for x in xs if x <= xmid)
    m = sum(1 for v in vs if v <= ymid)
    return w, p, m
