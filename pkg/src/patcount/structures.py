"""Shared per-permutation data structures, built lazily and cached.

The counting engines need up to four flat-array structures: the merge tree of
the permutation, the merge tree of its x-reversal (for 21-type queries), and
a sparse inner value tree on top of each.  ``Workspace`` builds each on first
use and hands kernels the raw array tuples.
"""
from __future__ import annotations

import numpy as np

from . import _kernels as K
from .perm import Permutation


class _Tree:
    """One merge tree pair (main + mirrored) plus optional inner trees."""

    def __init__(self, vals0: np.ndarray):
        self.vals = np.ascontiguousarray(vals0, dtype=np.int64)
        self.n = int(self.vals.size)
        self.nt = K.padded_size(max(self.n, 1))
        self.toff, self.tlen, self.tvals, self.tpos = K.build_tree(self.vals, self.nt)
        inv = np.empty_like(self.vals)
        inv[self.vals] = np.arange(self.n, dtype=np.int64)
        self.inv = inv
        self.moff, self.mlen, self.mvals, self.mpos = K.build_tree(inv, self.nt)
        self.olo, self.ohi = K.outer_ranges(self.nt)
        self._inner = None

    @property
    def inner(self):
        if self._inner is None:
            self._inner = K.build_inner(self.toff, self.tlen, self.tvals, self.tpos, self.nt)
        return self._inner

    def seg_args(self):
        return (self.toff, self.tlen, self.tvals, self.nt)

    def seg_args_full(self):
        return (self.toff, self.tlen, self.tvals, self.moff, self.mlen, self.mvals, self.nt)

    def rect_args(self):
        """Arguments for approx12_rect/list12_rect kernels."""
        (iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12,
         i_aug_off, i_aug_len, i_lo, i_hi, i_outer, xbuf, augbuf, nn) = self.inner
        return (self.toff, self.tlen, self.tvals, self.tpos, self.nt, self.olo, self.ohi,
                iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12, i_lo, i_hi, xbuf)

    def list_args(self):
        (iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12,
         i_aug_off, i_aug_len, i_lo, i_hi, i_outer, xbuf, augbuf, nn) = self.inner
        return (self.toff, self.tlen, self.tvals, self.tpos, self.nt, self.olo, self.ohi,
                iroot, i_ylo, i_yhi, i_yoff, i_ylen, i_xoff, i_c12,
                i_aug_off, i_aug_len, i_lo, i_hi, xbuf, augbuf, self.vals)


class Workspace:
    """All structures for one permutation; immutable after (lazy) build."""

    def __init__(self, p: Permutation):
        self.p = p
        self.n = p.n
        self._main: _Tree | None = None
        self._rev: _Tree | None = None

    @property
    def main(self) -> _Tree:
        if self._main is None:
            self._main = _Tree(self.p.as_array0())
        return self._main

    @property
    def rev(self) -> _Tree:
        """Structures of the x-reversed permutation (21 queries)."""
        if self._rev is None:
            self._rev = _Tree(self.p.as_array0()[::-1].copy())
        return self._rev
