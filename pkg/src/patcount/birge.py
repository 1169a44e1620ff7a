"""Approximation of monotone sums from few probes.

A monotone nonincreasing nonnegative sequence x_1 >= ... >= x_n is split into
contiguous intervals whose lengths grow geometrically (growth delta, with
delta = eps/4 by default).  Probing each interval at its last (smallest)
element and weighting by the interval length gives an estimate that never
exceeds the true sum S and is at least S/(1+eps); so it is within (1 +- eps)
of S.  The interval boundaries are oblivious: they depend only on (n, eps),
never on the probed values.

The worst case over all monotone sequences is attained by 0/1 step sequences
(the extreme rays of the monotone cone), which makes the error of a concrete
schedule exactly checkable; ``build_schedule`` verifies that bound and halves
delta until it holds, so the guarantee is unconditional rather than
asymptotic.

With probes that are themselves only (1 +- gamma)-accurate, the estimate is
within (1 +- gamma)(1 +- eps) of S: the schedule is oblivious, so probe noise
passes straight through the weighted sum.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from . import _kernels as K
from .errors import InvalidEpsilon

Direction = Literal["nonincreasing", "nondecreasing"]


@dataclass(frozen=True)
class MonotoneAccess:
    """Query access to a monotone nonnegative sequence.

    ``probe(i)`` takes a 0-based index and may be expensive or multiplicatively
    noisy; ``direction`` declares which way the true values are sorted.
    """

    length: int
    probe: Callable[[int], float]
    direction: Direction = "nonincreasing"


@dataclass(frozen=True)
class BirgeSchedule:
    """An oblivious interval decomposition of {1..n}.

    ``probe_indices[j]`` is the 0-based index of the last element of interval
    I_j; ``weights[j]`` = |I_j|.  Intervals are contiguous, disjoint, cover
    the whole range, and |I_1| = 1.
    """

    n: int
    epsilon: float
    delta: float
    probe_indices: np.ndarray
    weights: np.ndarray

    @property
    def num_intervals(self) -> int:
        return len(self.weights)

    def intervals(self) -> list[tuple[int, int]]:
        """Inclusive 1-based (start, end) interval bounds."""
        out = []
        start = 1
        for w in self.weights:
            out.append((start, start + int(w) - 1))
            start += int(w)
        return out


def build_schedule(n: int, epsilon: float) -> BirgeSchedule:
    """Schedule for approximating nonincreasing sums of length n."""
    if not (0.0 < epsilon < 1.0):
        raise InvalidEpsilon(f"epsilon must be in (0,1), got {epsilon}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return BirgeSchedule(0, epsilon, epsilon / 4.0,
                             np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))
    idx = np.empty(n, dtype=np.int64)
    w = np.empty(n, dtype=np.int64)
    ell = K.birge_fill(n, epsilon, idx, w)
    delta = K.birge_delta(n, epsilon)
    return BirgeSchedule(n, epsilon, float(delta), idx[:ell].copy(), w[:ell].copy())


def probe_count(schedule: BirgeSchedule) -> int:
    return schedule.num_intervals


def approx_monotone_sum(acc: MonotoneAccess, epsilon: float) -> float:
    """Estimate sum(x) within (1 +- eps) from O(eps^-1 log n) probes.

    Returns a value in [S/(1+eps), S] for exact probes (never overestimates);
    an all-zero sequence yields exactly 0 and a zero-length sequence yields 0.
    """
    if not (0.0 < epsilon < 1.0):
        raise InvalidEpsilon(f"epsilon must be in (0,1), got {epsilon}")
    n = acc.length
    if n == 0:
        return 0.0
    sched = build_schedule(n, epsilon)
    total = 0.0
    if acc.direction == "nonincreasing":
        for j in range(sched.num_intervals):
            total += float(sched.weights[j]) * float(acc.probe(int(sched.probe_indices[j])))
    else:
        # reflect: x reversed is nonincreasing
        for j in range(sched.num_intervals):
            total += float(sched.weights[j]) * float(acc.probe(n - 1 - int(sched.probe_indices[j])))
    return total


def sandwich_bounds(schedule: BirgeSchedule, x: Sequence[float]) -> tuple[float, float]:
    """Lower/upper schedule sums (probe-at-last vs probe-at-first) for a
    nonincreasing sequence; used by the property suite."""
    lo = 0.0
    hi = 0.0
    start = 0
    for j in range(schedule.num_intervals):
        w = int(schedule.weights[j])
        lo += w * float(x[int(schedule.probe_indices[j])])
        hi += w * float(x[start])
        start += w
    return lo, hi
