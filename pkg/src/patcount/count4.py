"""(1+eps)-approximate counting for all 24 patterns of length 4.

Dispatch: canonicalize maps the pattern to one of eight representatives and
transforms the permutation accordingly.  1324/1342/1423/1432 run the
two-stage monotone engine, 2413 runs the bucket/separator engine, and
1234/1243/2143 run hybrid recipes that end in a 12- or 21-range query.

Exact mode replaces every probe schedule with full enumeration and every
approximate range query with its exact counterpart; the result is then an
integer and must match the brute-force oracle (the decomposition-correctness
gate).

Stage accuracies: the monotone engines use eps/3 per stage as in the
two-stage analysis; the hybrid recipes split eps over their (at most two)
approximating stages as eps/4 so the product of factors stays below 1+eps.
All estimators are one-sided (never overestimate), so stage factors compose
multiplicatively without symmetric-error bookkeeping.
"""
from __future__ import annotations

import math

import numpy as np

from . import _kernels as K
from .errors import ExactOverflow, InvalidEpsilon, InvalidPattern
from .perm import Pattern, Permutation, canonicalize
from .structures import Workspace

FAMILY_IDS = {"1324": 0, "1342": 1, "1423": 2, "1432": 3}

# exact mode accumulates in float64 with integral values; cap to stay exact
EXACT_N_CAP = 3000


def _check_eps(epsilon: float | None) -> None:
    if epsilon is not None and not (0.0 < epsilon < 1.0):
        raise InvalidEpsilon(f"epsilon must be in (0,1), got {epsilon}")


def _check_exact_cap(n: int, exact: bool) -> None:
    if exact and n > EXACT_N_CAP:
        raise ExactOverflow(f"exact mode supports n <= {EXACT_N_CAP}, got {n}")


def classify_copy_type(i2: int, i3: int, i4: int, n: int) -> tuple[int, str]:
    """(level j, heaviness) of a 2413 copy from its 0-based i2 < i3 < i4.

    j is the highest bit where i2 and i4 differ; the copy is 4-heavy when i3
    shares i2's j-bucket, else 3-heavy.  Exactly one cell per copy.
    """
    if not (0 <= i2 < i3 < i4 < n):
        raise ValueError("need 0 <= i2 < i3 < i4 < n")
    j = (i2 ^ i4).bit_length() - 1
    heavy = "4-heavy" if (i2 >> j) == (i3 >> j) else "3-heavy"
    return j, heavy


def _run_family(ws: Workspace, pat_id: int, epsilon: float | None,
                check_mono: bool = False, lo: int = 0, hi: int | None = None):
    tr = ws.main
    hi = tr.n if hi is None else hi
    exact = epsilon is None
    eps = 0.5 if exact else float(epsilon)
    return K.count4_family(pat_id, tr.vals, tr.inv, *tr.seg_args_full(),
                           eps, exact, check_mono, lo, hi)


def _run_2413(ws: Workspace, epsilon: float | None, check_mono: bool = False,
              lo: int = 0, hi: int | None = None, tally: bool = False):
    tr = ws.main
    hi = tr.n if hi is None else hi
    exact = epsilon is None
    eps = 0.5 if exact else float(epsilon)
    L = max((tr.nt - 1).bit_length(), 0)
    buf = np.zeros(max((hi - lo) * max(L, 1) * 2, 1), dtype=np.int64)
    total, viol = K.count_2413(tr.vals, tr.inv, *tr.seg_args_full(),
                               eps, exact, check_mono, lo, hi, buf, tally)
    if tally:
        return total, viol, buf.reshape(hi - lo, max(L, 1), 2)
    return total, viol


def _run_easy(ws: Workspace, rep: str, epsilon: float | None,
              check_mono: bool = False, lo: int = 0, hi: int | None = None):
    tr = ws.main
    hi = tr.n if hi is None else hi
    exact = epsilon is None
    eps = 0.5 if exact else float(epsilon)
    ra = tr.rect_args()
    # rect_args = (toff, tlen, tvals, tpos, nt, olo, ohi, iroot, ..., xbuf)
    if rep == "1234":
        return K.count_1234(tr.vals, tr.inv, *tr.seg_args_full(),
                            tr.tpos, tr.olo, tr.ohi, *ra[7:],
                            eps, exact, lo, hi)
    if rep == "1243":
        return K.count_1243(tr.vals, tr.inv, *tr.seg_args_full(),
                            tr.tpos, tr.olo, tr.ohi, *ra[7:],
                            eps, exact, check_mono, lo, hi)
    rv = ws.rev
    rra = rv.rect_args()
    return K.count_2143(tr.vals, tr.inv, *tr.seg_args_full(),
                        rv.toff, rv.tlen, rv.tvals, rv.tpos, rv.olo, rv.ohi,
                        *rra[7:],
                        eps, exact, check_mono, lo, hi)


def count4_representative(ws: Workspace, rep: str, epsilon: float | None,
                          check_mono: bool = False) -> tuple[float, int]:
    """Count copies of a representative pattern on a prepared workspace."""
    if ws.n < 4:
        return 0.0, 0
    if rep in FAMILY_IDS:
        return _run_family(ws, FAMILY_IDS[rep], epsilon, check_mono)
    if rep == "2413":
        total, viol = _run_2413(ws, epsilon, check_mono)
        return total, viol
    if rep in ("1234", "1243", "2143"):
        return _run_easy(ws, rep, epsilon, check_mono)
    raise InvalidPattern(f"not a representative: {rep}")


def count4(p: Permutation, sigma: Pattern, epsilon: float | None = 0.1) -> float:
    """Count sigma-copies (k=4) within (1 +- eps); epsilon=None gives the
    exact decomposition mode (integer result)."""
    if sigma.k != 4:
        raise InvalidPattern(f"count4 needs k=4, got {sigma}")
    _check_eps(epsilon)
    _check_exact_cap(p.n, epsilon is None)
    rep, t = canonicalize(sigma)
    ws = Workspace(t.apply(p))
    total, _ = count4_representative(ws, str(rep), epsilon)
    return float(total) if epsilon is not None else float(int(round(total)))


def approx_1324(p: Permutation, epsilon: float | None) -> float:
    _check_eps(epsilon)
    _check_exact_cap(p.n, epsilon is None)
    return _run_family(Workspace(p), 0, epsilon)[0]


def approx_1324_family(p: Permutation, sigma: Pattern, epsilon: float | None) -> float:
    name = str(sigma)
    if name not in FAMILY_IDS:
        raise InvalidPattern(f"family engine handles 1324/1342/1423/1432, got {name}")
    _check_eps(epsilon)
    _check_exact_cap(p.n, epsilon is None)
    return _run_family(Workspace(p), FAMILY_IDS[name], epsilon)[0]


def approx_2413(p: Permutation, epsilon: float | None) -> float:
    _check_eps(epsilon)
    _check_exact_cap(p.n, epsilon is None)
    return _run_2413(Workspace(p), epsilon)[0]


def approx_easy_class(p: Permutation, sigma: Pattern, epsilon: float | None) -> float:
    name = str(sigma)
    if name not in ("1234", "1243", "2143"):
        raise InvalidPattern(f"easy-class engine handles 1234/1243/2143, got {name}")
    _check_eps(epsilon)
    _check_exact_cap(p.n, epsilon is None)
    return _run_easy(Workspace(p), name, epsilon)[0]


def tally_2413_cells(p: Permutation) -> np.ndarray:
    """Exact per-(i, j, heaviness) cell counts; shape (n, L, 2) with
    [..., 0] = 3-heavy, [..., 1] = 4-heavy.  Used by the partition tests."""
    ws = Workspace(p)
    _, _, buf = _run_2413(ws, None, tally=True)
    return buf
