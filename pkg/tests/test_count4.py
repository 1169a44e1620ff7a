"""4-pattern engines: exact-mode oracle equivalence, accuracy, partitions."""
import math
import random

import numpy as np
import pytest

from patcount import count4 as C4
from patcount import oracle
from patcount.errors import ExactOverflow, InvalidEpsilon, InvalidPattern
from patcount.perm import Pattern, all_patterns, ingest
from patcount.structures import Workspace

from conftest import shuffled


def test_trivial_closed_forms(warm_kernels):
    ident = ingest(range(1, 11))
    assert C4.count4(ident, Pattern.parse("1234"), None) == math.comb(10, 4)
    assert C4.count4(ident, Pattern.parse("1324"), 0.1) == 0.0
    assert C4.count4(ident, Pattern.parse("4321"), 0.2) == 0.0
    dec = ingest(range(10, 0, -1))
    assert C4.count4(dec, Pattern.parse("4321"), None) == math.comb(10, 4)
    got = C4.count4(dec, Pattern.parse("4321"), 0.1)
    assert math.comb(10, 4) / 1.1 <= got <= math.comb(10, 4)
    assert C4.count4(ingest([2, 4, 1, 3]), Pattern.parse("2413"), None) == 1
    assert C4.count4(ingest([1, 3, 2, 4]), Pattern.parse("1324"), None) == 1


def test_single_copy_patterns_exact(warm_kernels):
    for s in ("1342", "1423", "1432"):
        p = ingest([int(c) for c in s])
        assert C4.count4(p, Pattern.parse(s), None) == 1


def test_exact_mode_equals_oracle(warm_kernels):
    rng = random.Random(31)
    for trial in range(10):
        n = rng.randrange(4, 50)
        p = shuffled(n, rng)
        truth = oracle.oracle_count_all(p, 4)
        for sigma in all_patterns(4):
            assert C4.count4(p, sigma, None) == truth[sigma], (n, str(sigma))


def test_exact_sum_is_choose4(warm_kernels):
    rng = random.Random(32)
    p = shuffled(30, rng)
    total = sum(C4.count4(p, sigma, None) for sigma in all_patterns(4))
    assert total == math.comb(30, 4)


def test_frozen_instance_regression(warm_kernels):
    p = ingest([1, 3, 6, 5, 4, 8, 2, 7, 9])
    assert C4.count4(p, Pattern.parse("1324"), None) == 32
    got = C4.count4(p, Pattern.parse("1324"), 0.3)
    assert 32 / 1.3 - 1e-9 <= got <= 32 + 1e-9


def test_approx_within_bounds_and_zero_sound(warm_kernels):
    rng = random.Random(33)
    for trial in range(3):
        n = rng.randrange(40, 90)
        p = shuffled(n, rng)
        truth = oracle.oracle_count_all(p, 4)
        for sigma in all_patterns(4):
            for eps in (0.3, 0.1):
                got = C4.count4(p, sigma, eps)
                want = truth[sigma]
                assert want / (1 + eps) - 1e-9 <= got <= want + 1e-9, (n, str(sigma), eps)
                assert (got == 0) == (want == 0)


def test_classify_copy_type_spec_examples():
    assert C4.classify_copy_type(6, 7, 14, 32) == (3, "4-heavy")
    j, heavy = C4.classify_copy_type(0, 1, 1 << 4, 32)
    assert j == 4
    with pytest.raises(ValueError):
        C4.classify_copy_type(3, 2, 5, 8)


def test_2413_cell_partition_bijection(warm_kernels):
    rng = random.Random(34)
    for trial in range(6):
        n = rng.randrange(6, 80)
        p = shuffled(n, rng)
        copies = oracle.oracle_enumerate_fast(p, Pattern.parse("2413"))
        tal = C4.tally_2413_cells(p)
        want = np.zeros_like(tal)
        for (a, b, c, d) in copies:
            i2, i3, i4 = b - 1, c - 1, d - 1
            j, heavy = C4.classify_copy_type(i2, i3, i4, n)
            if heavy == "4-heavy":
                want[i2, j, 1] += 1
            else:
                want[i4, j, 0] += 1
        assert (tal == want).all()
        assert int(tal.sum()) == len(copies)


def test_monotonicity_witnesses_hand_recipes(warm_kernels):
    """Full exact evaluation must see zero order violations in every scan."""
    rng = random.Random(35)
    for trial in range(12):
        n = rng.randrange(8, 64)
        ws = Workspace(shuffled(n, rng))
        for pat_id in range(4):
            _, viol = C4._run_family(ws, pat_id, None, check_mono=True)
            assert viol == 0
        _, viol = C4._run_2413(ws, None, check_mono=True)
        assert viol == 0
        for rep in ("1243", "2143"):
            _, viol = C4._run_easy(ws, rep, None, check_mono=True)
            assert viol == 0


def test_validation_errors():
    p = ingest([2, 1, 3, 4])
    with pytest.raises(InvalidPattern):
        C4.count4(p, Pattern.parse("123"), 0.1)
    with pytest.raises(InvalidEpsilon):
        C4.count4(p, Pattern.parse("1234"), 1.5)
    big = ingest(range(1, C4.EXACT_N_CAP + 2))
    with pytest.raises(ExactOverflow):
        C4.count4(big, Pattern.parse("1234"), None)


def test_small_n_edge_cases(warm_kernels):
    for n in (0, 1, 2, 3):
        p = ingest(range(1, n + 1))
        assert C4.count4(p, Pattern.parse("1234"), None) == 0
        assert C4.count4(p, Pattern.parse("2413"), 0.5) == 0
