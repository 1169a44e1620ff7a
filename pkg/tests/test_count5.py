"""5-pattern engine: exact equivalence, accuracy, count-once charging."""
import math
import random

import numpy as np
import pytest

from patcount import count5 as C5
from patcount import oracle
from patcount.errors import ExactOverflow, InvalidPattern, MissingRecipe
from patcount.perm import Pattern, all_patterns, ingest
from patcount.structures import Workspace

from conftest import shuffled


def test_closed_forms(warm_kernels):
    ident = ingest(range(1, 11))
    assert C5.count5(ident, Pattern.parse("12345"), None) == 252
    got = C5.count5(ident, Pattern.parse("12345"), 0.1)
    assert 252 / 1.1 <= got <= 252
    assert C5.count5(ident, Pattern.parse("54321"), None) == 0
    assert C5.count5(ingest([2, 4, 1, 3, 5]), Pattern.parse("24135"), None) == 1


def test_small_n(warm_kernels):
    for n in (0, 1, 4):
        p = ingest(range(1, n + 1))
        assert C5.count5(p, Pattern.parse("12345"), 0.3) == 0.0


def test_exact_mode_equals_oracle_all_patterns(warm_kernels):
    rng = random.Random(41)
    for trial in range(3):
        n = rng.randrange(8, 36)
        p = shuffled(n, rng)
        ws = Workspace(p)
        truth = oracle.oracle_count_all(p, 5)
        for sigma in all_patterns(5):
            got = C5.count5_cells(ws, str(sigma), None)[0]
            assert got == truth[sigma], (n, str(sigma))


def test_factorization_class_exact(warm_kernels):
    rng = random.Random(42)
    for s in ("13524", "14253", "42531", "53142", "24135", "31425", "35241", "52413"):
        p = shuffled(24, rng)
        assert C5.count5(p, Pattern.parse(s), None) == oracle.oracle_count(p, Pattern.parse(s))


def test_factor_cell_spot_case(warm_kernels):
    # [1, 3, 5, 2, 4]: the single 13524 copy has its "1" alone bottom-left
    p = ingest([1, 3, 5, 2, 4])
    assert C5.count5(p, Pattern.parse("13524"), None) == 1


def test_approx_accuracy_and_zero_soundness(warm_kernels):
    rng = random.Random(43)
    p = shuffled(48, rng)
    ws = Workspace(p)
    truth = oracle.oracle_count_all(p, 5)
    for sigma in all_patterns(5):
        for eps in (0.3, 0.1):
            got = C5.count5_cells(ws, str(sigma), eps)[0]
            want = truth[sigma]
            assert want / (1 + eps) - 1e-9 <= got <= want + 1e-9, (str(sigma), eps)
            assert (got == 0) == (want == 0)


def test_count_once_charging_bijection(warm_kernels):
    rng = random.Random(44)
    pats = ["12345", "24135", "13524", "41352", "52341", "31254"]
    for trial in range(3):
        n = rng.randrange(10, 34)
        p = shuffled(n, rng)
        ws = Workspace(p)
        for s in pats:
            sigma = Pattern.parse(s)
            total, _, tal = C5.count5_cells(ws, s, None, tally=True)
            copies = oracle.oracle_enumerate_fast(p, sigma)
            want = np.zeros_like(tal)
            for c in copies:
                w, pp, mm = C5.charge_copy(ws, c)
                want[w, (pp - 1) * 4 + (mm - 1)] += 1
            assert (tal == want).all(), (n, s)
            assert int(total) == len(copies)


def test_straddle_filter(warm_kernels):
    """Every charged copy straddles both cuts of its cell."""
    rng = random.Random(45)
    p = shuffled(24, rng)
    ws = Workspace(p)
    pairs = {sp.node: sp for sp in C5.enumerate_separator_pairs(ws)}
    for s in ("24135", "12345"):
        for c in oracle.oracle_enumerate_fast(p, Pattern.parse(s)):
            w, _, _ = C5.charge_copy(ws, c)
            sp = pairs[w]
            xs = list(c)
            vs = [p.values[x - 1] for x in c]
            assert min(xs) <= sp.x_cut < max(xs)
            assert min(vs) <= sp.y_cut < max(vs)
            assert sp.x_lo <= min(xs) and max(xs) <= sp.x_hi
            assert sp.y_lo <= min(vs) and max(vs) <= sp.y_hi


def test_separator_pair_enumeration(warm_kernels):
    rng = random.Random(46)
    p = shuffled(8, rng)
    ws = Workspace(p)
    pairs = list(C5.enumerate_separator_pairs(ws))
    assert len(pairs) == int(ws.main.inner[14])
    # n=1: a single inner node, no countable copies
    ws1 = Workspace(ingest([1]))
    assert len(list(C5.enumerate_separator_pairs(ws1))) == 1
    assert C5.count5(ingest([1]), Pattern.parse("12345"), 0.3) == 0.0


def test_missing_recipe_refused(warm_kernels):
    from patcount.recipes import load_default_table

    table = dict(load_default_table())
    del table[("12345", 2, 3)]
    p = shuffled(12, random.Random(47))
    with pytest.raises(MissingRecipe):
        C5.count5(p, Pattern.parse("12345"), 0.3, table=table)


def test_exact_cap(warm_kernels):
    from patcount.count4 import EXACT_N_CAP

    big = ingest(range(1, EXACT_N_CAP + 2))
    with pytest.raises(ExactOverflow):
        C5.count5(big, Pattern.parse("12345"), None)


def test_monotonicity_witnesses_recipes(warm_kernels):
    rng = random.Random(48)
    for trial in range(2):
        n = rng.randrange(16, 48)
        ws = Workspace(shuffled(n, rng))
        for sigma in all_patterns(5)[::7]:
            _, viol = C5.count5_cells(ws, str(sigma), None, check_mono=True)
            assert viol == 0, str(sigma)
