"""Core permutation and pattern types, rank ingestion, and symmetry transforms.

Permutations are 1-indexed at the API surface: a ``Permutation`` over n
elements holds ``values`` with ``values[i-1]`` being the value at position i,
and the values form a bijection on {1..n}.  A pattern is a short permutation
(k <= 5).  A copy of a pattern ``sigma`` in a permutation ``p`` is a tuple of
positions i_1 < ... < i_k whose values are ordered like ``sigma``.

The eight symmetry transforms (reverse, complement, inverse and their
compositions) act on the point set {(i, values[i-1])} and map copies of a
pattern bijectively to copies of the transformed pattern.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DuplicateValue, InvalidPattern

# Representative 4-patterns: every 4-pattern reaches one of these under the
# symmetry group.  1234/1243/2143 dispatch to the 12-range engine, 1324 and
# friends to the two-stage monotone engine, 2413 to the bucket engine.
REPRESENTATIVES_K4 = ("1234", "1243", "2143", "1324", "1342", "1423", "1432", "2413")


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}, stored as the value sequence."""

    values: tuple[int, ...]

    def __post_init__(self):
        n = len(self.values)
        seen = [False] * (n + 1)
        for v in self.values:
            if not isinstance(v, (int, np.integer)) or not (1 <= v <= n) or seen[v]:
                raise InvalidPattern(f"not a permutation of 1..{n}: {self.values!r}")
            seen[v] = True

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def as_array0(self) -> np.ndarray:
        """0-indexed value array: entry i is values[i]-1.  Internal engines use this."""
        return np.asarray(self.values, dtype=np.int64) - 1

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.values):
            inv[v - 1] = i + 1
        return Permutation(tuple(inv))

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.values)


@dataclass(frozen=True)
class Pattern:
    """A pattern: a permutation of {1..k} with 1 <= k <= 5."""

    order: tuple[int, ...]

    def __post_init__(self):
        k = len(self.order)
        if not (1 <= k <= 5):
            raise InvalidPattern(f"pattern length {k} not in 1..5")
        if sorted(self.order) != list(range(1, k + 1)):
            raise InvalidPattern(f"not a permutation of 1..{k}: {self.order!r}")

    @property
    def k(self) -> int:
        return len(self.order)

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        text = text.strip()
        if not text.isdigit():
            raise InvalidPattern(f"pattern must be a digit string, got {text!r}")
        return cls(tuple(int(c) for c in text))

    def position_of(self, element: int) -> int:
        """1-based position of the element with value rank ``element``."""
        return self.order.index(element) + 1

    def __str__(self) -> str:
        return "".join(str(d) for d in self.order)


CopyTuple = tuple  # positions i_1 < ... < i_k, 1-based


@dataclass(frozen=True)
class SymmetryTransform:
    """One of the 8 symmetries of the permutation matrix.

    Applied to a point (x, y) on an n x n grid: transpose first (swap axes,
    the permutation inverse), then reverse (x -> n+1-x), then complement
    (y -> n+1-y).
    """

    transpose: bool = False
    reverse: bool = False
    complement: bool = False

    @property
    def kind(self) -> str:
        if not (self.transpose or self.reverse or self.complement):
            return "identity"
        parts = []
        if self.reverse:
            parts.append("reverse")
        if self.complement:
            parts.append("complement")
        if self.transpose:
            parts.append("inverse")
        return "∘".join(parts)

    def apply_point(self, x: int, y: int, n: int) -> tuple[int, int]:
        if self.transpose:
            x, y = y, x
        if self.reverse:
            x = n + 1 - x
        if self.complement:
            y = n + 1 - y
        return x, y

    def apply(self, p: Permutation | Pattern):
        """Transform a permutation (or pattern) by acting on its point set."""
        vals = p.values if isinstance(p, Permutation) else p.order
        n = len(vals)
        pts = [self.apply_point(i + 1, v, n) for i, v in enumerate(vals)]
        pts.sort()
        out = tuple(y for _, y in pts)
        return Permutation(out) if isinstance(p, Permutation) else Pattern(out)

    def apply_copy(self, copy: Sequence[int], p: Permutation) -> CopyTuple:
        """Map a copy (positions in p) to the corresponding copy in apply(p)."""
        n = p.n
        xs = sorted(self.apply_point(i, p.values[i - 1], n)[0] for i in copy)
        return tuple(xs)

    def inverse_transform(self) -> "SymmetryTransform":
        """The group inverse (needed to map copies found in t(p) back to p)."""
        if not self.transpose:
            return self
        # (transpose; reverse^r; complement^c)^-1 = transpose; reverse^c; complement^r
        return SymmetryTransform(True, self.complement, self.reverse)


# Fixed search order: identity, reverse, complement, reverse o complement,
# then the same four composed with inverse.
ALL_TRANSFORMS = tuple(
    SymmetryTransform(t, r, c)
    for t in (False, True)
    for c in (False, True)
    for r in (False, True)
)


def ingest(raw: Iterable[float]) -> Permutation:
    """Rank-compress a sequence of distinct reals into a Permutation.

    values[i] = rank of raw[i] among all entries.  Raises DuplicateValue
    (with 1-based positions) on ties; ties are rejected rather than broken
    because tie-breaking silently changes pattern counts.
    """
    arr = np.asarray(list(raw), dtype=np.float64)
    n = arr.size
    order = np.argsort(arr, kind="stable")
    svals = arr[order]
    dup = np.nonzero(svals[1:] == svals[:-1])[0]
    if dup.size:
        i, j = sorted((int(order[dup[0]]) + 1, int(order[dup[0] + 1]) + 1))
        raise DuplicateValue(i, j)
    ranks = np.empty(n, dtype=np.int64)
    ranks[order] = np.arange(1, n + 1)
    return Permutation(tuple(int(r) for r in ranks))


def parse_sequence_text(text: str) -> list[float]:
    """Parse the permutation text format: one number per line, or one
    whitespace/comma-separated line."""
    toks = text.replace(",", " ").split()
    return [float(t) for t in toks]


@lru_cache(maxsize=None)
def canonicalize(sigma: Pattern) -> tuple[Pattern, SymmetryTransform]:
    """Map a 4-pattern to its engine representative.

    Returns (representative, t) with t(sigma) = representative; applying t to
    any permutation maps sigma-copies bijectively onto representative-copies.
    The transform order is fixed, so the choice is deterministic.
    """
    if sigma.k != 4:
        raise InvalidPattern("canonicalize handles k = 4 only")
    reps = {Pattern.parse(r) for r in REPRESENTATIVES_K4}
    for t in ALL_TRANSFORMS:
        if t.apply(sigma) in reps:
            return t.apply(sigma), t
    raise AssertionError(f"no representative found for {sigma}")  # unreachable


def pattern_rank(sigma: Pattern) -> int:
    """Lexicographic rank of the pattern among all k! patterns of its length."""
    k = sigma.k
    rest = list(sigma.order)
    rank = 0
    import math

    for i in range(k):
        smaller = sum(1 for v in rest[i + 1 :] if v < rest[i])
        rank += smaller * math.factorial(k - 1 - i)
    return rank


def all_patterns(k: int) -> list[Pattern]:
    """All k! patterns in lexicographic order."""
    from itertools import permutations

    return [Pattern(p) for p in permutations(range(1, k + 1))]
