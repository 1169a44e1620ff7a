"""Chunked deterministic parallelism for the counting engines.

The outer loops (anchor positions for k=4, separator cells for k=5) are
embarrassingly parallel over read-only structures.  Work is split into
fixed-size chunks whose boundaries do not depend on the worker count, and
partial sums are reduced in chunk order, so the result is bit-identical for
every thread width (including 1, which skips the pool entirely).
"""
from __future__ import annotations

import multiprocessing as mp

from .count4 import FAMILY_IDS, _run_2413, _run_easy, _run_family
from .perm import Pattern, Permutation, canonicalize
from .structures import Workspace

CHUNK = 512

_WS: Workspace | None = None
_JOB: tuple | None = None


def _chunks(total: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]


def _run_chunk4(bounds: tuple[int, int]) -> float:
    lo, hi = bounds
    rep, epsilon = _JOB
    if rep in FAMILY_IDS:
        return _run_family(_WS, FAMILY_IDS[rep], epsilon, lo=lo, hi=hi)[0]
    if rep == "2413":
        return _run_2413(_WS, epsilon, lo=lo, hi=hi)[0]
    return _run_easy(_WS, rep, epsilon, lo=lo, hi=hi)[0]


def _run_chunk5(bounds: tuple[int, int]) -> float:
    lo, hi = bounds
    pattern, epsilon = _JOB
    from .count5 import count5_cells

    return count5_cells(_WS, pattern, epsilon, cell_lo=lo, cell_hi=hi)[0]


def _map_chunks(fn, bounds_list, threads: int) -> list[float]:
    if threads <= 1 or len(bounds_list) <= 1:
        return [fn(b) for b in bounds_list]
    ctx = mp.get_context("fork")
    with ctx.Pool(processes=min(threads, len(bounds_list))) as pool:
        return pool.map(fn, bounds_list)


def count4_parallel(p: Permutation, sigma: Pattern, epsilon: float | None,
                    threads: int) -> float:
    global _WS, _JOB
    rep, t = canonicalize(sigma)
    ws = Workspace(t.apply(p))
    # force lazy builds before forking so children share the arrays
    ws.main.inner
    if str(rep) == "2143":
        ws.rev.inner
    _WS, _JOB = ws, (str(rep), epsilon)
    try:
        parts = _map_chunks(_run_chunk4, _chunks(ws.n), threads)
    finally:
        _WS = _JOB = None
    total = 0.0
    for v in parts:
        total += v
    return total if epsilon is not None else float(int(round(total)))


def count5_parallel(p: Permutation, sigma: Pattern, epsilon: float | None,
                    threads: int) -> float:
    global _WS, _JOB
    ws = Workspace(p)
    ws.main.inner
    ws.rev.inner
    nn = int(ws.main.inner[14])
    _WS, _JOB = ws, (str(sigma), epsilon)
    try:
        parts = _map_chunks(_run_chunk5, _chunks(nn), threads)
    finally:
        _WS = _JOB = None
    total = 0.0
    for v in parts:
        total += v
    return total if epsilon is not None else float(int(round(total)))
