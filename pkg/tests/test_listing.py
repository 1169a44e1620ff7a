"""Copy listing: oracle-set equality, prefix stability, work accounting."""
import random

import pytest

from patcount import listing as L
from patcount import oracle
from patcount.perm import Pattern, all_patterns, ingest

from conftest import shuffled


def test_trivial_examples(warm_kernels):
    assert sorted(L.list_copies(ingest(range(1, 5)), Pattern.parse("12"), None)) == [
        (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert L.list_copies(ingest([2, 1]), Pattern.parse("12"), None) == []
    assert L.list_copies(ingest([2, 4, 1, 3]), Pattern.parse("2413"), 5) == [(1, 2, 3, 4)]
    assert L.list_copies(ingest([1, 2, 3]), Pattern.parse("123"), 0) == []
    assert L.list_copies(ingest([1]), Pattern.parse("1"), None) == [(1,)]


def test_all_patterns_small_k(warm_kernels):
    rng = random.Random(51)
    for trial in range(4):
        n = rng.randrange(4, 28)
        p = shuffled(n, rng)
        for k in (1, 2, 3, 4):
            for sigma in all_patterns(k):
                got, stats = L.list_copies_stats(p, sigma, None)
                want = oracle.oracle_enumerate(p, sigma)
                assert len(got) == len(set(got))
                assert set(got) == want, (n, str(sigma))
                assert stats.abandoned <= 5 * len(got) + n


def test_all_patterns_k5(warm_kernels):
    rng = random.Random(52)
    for trial in range(2):
        n = rng.randrange(8, 22)
        p = shuffled(n, rng)
        for sigma in all_patterns(5):
            got, stats = L.list_copies_stats(p, sigma, None)
            want = oracle.oracle_enumerate_fast(p, sigma)
            assert len(got) == len(set(got))
            assert set(got) == want, (n, str(sigma))
            assert stats.abandoned <= 5 * len(got) + n


def test_prefix_stability(warm_kernels):
    rng = random.Random(53)
    p = shuffled(26, rng)
    for s in ("12", "321", "1324", "2413", "24135", "13524"):
        sigma = Pattern.parse(s)
        full = L.list_copies(p, sigma, None)
        for t in (0, 1, 2, 5, 10, len(full), len(full) + 7):
            assert L.list_copies(p, sigma, t) == full[:min(t, len(full))]


def test_emitted_tuples_are_valid(warm_kernels):
    rng = random.Random(54)
    p = shuffled(30, rng)
    vals = p.values
    for s in ("1432", "21435", "53142"):
        sigma = Pattern.parse(s)
        for copy in L.list_copies(p, sigma, 40):
            assert list(copy) == sorted(copy)
            vs = [vals[i - 1] for i in copy]
            for a in range(sigma.k):
                for b in range(a + 1, sigma.k):
                    assert (vs[a] < vs[b]) == (sigma.order[a] < sigma.order[b])


def test_t_larger_than_total(warm_kernels):
    p = ingest([2, 4, 1, 3])
    assert L.list_copies(p, Pattern.parse("2413"), 10 ** 9) == [(1, 2, 3, 4)]


def test_negative_t_rejected():
    with pytest.raises(ValueError):
        L.list_copies(ingest([1, 2]), Pattern.parse("12"), -1)


def test_accounting_bound_with_truncation(warm_kernels):
    rng = random.Random(55)
    p = shuffled(40, rng)
    for s in ("2413", "24135"):
        sigma = Pattern.parse(s)
        for t in (1, 10):
            got, stats = L.list_copies_stats(p, sigma, t)
            assert len(got) <= t
            assert stats.abandoned <= 5 * len(got) + p.n
