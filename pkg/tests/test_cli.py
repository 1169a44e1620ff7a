"""CLI surface: flags, formats, exit codes, determinism."""
import csv
import io
import json
import math

import pytest

from patcount.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_json_shape(capsys, warm_kernels):
    code, out, _ = run(capsys, "count", "--pattern", "1324", "--random", "60,7",
                       "--epsilon", "0.1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["mode"] == "approx"
    assert payload["epsilon"] == 0.1
    assert payload["relative_error_bound"] == 0.1
    assert payload["n"] == 60
    assert payload["count"] >= 0


def test_count_exact_identity(capsys, warm_kernels, tmp_path):
    f = tmp_path / "ident.txt"
    f.write_text("\n".join(str(i) for i in range(1, 11)))
    code, out, _ = run(capsys, "count", "--pattern", "12345", "--input", str(f), "--exact")
    assert code == 0
    assert "count=252" in out
    assert "mode=exact" in out


def test_count_21_exact(capsys, tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("2 1")
    code, out, _ = run(capsys, "count", "--pattern", "21", "--input", str(f), "--exact")
    assert code == 0 and "count=1" in out


def test_count_real_valued_input(capsys, tmp_path):
    f = tmp_path / "r.txt"
    f.write_text("3.5, -1.0, 7.2")
    code, out, _ = run(capsys, "count", "--pattern", "12", "--input", str(f), "--exact")
    assert code == 0 and "count=2" in out


def test_ingest_error_exit_2(capsys, tmp_path):
    f = tmp_path / "dup.txt"
    f.write_text("1 1 2")
    code, _, err = run(capsys, "count", "--pattern", "12", "--input", str(f))
    assert code == 2
    assert "duplicate" in err


def test_missing_input_exit_2(capsys):
    code, _, err = run(capsys, "count", "--pattern", "12")
    assert code == 2 and "error" in err


def test_bad_random_exit_2(capsys):
    code, _, err = run(capsys, "count", "--pattern", "12", "--random", "nope")
    assert code == 2


def test_enumerate_lines_and_json(capsys, warm_kernels):
    code, out, _ = run(capsys, "enumerate", "--pattern", "2413", "--random", "16,3", "--t", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert 0 < len(lines) <= 4
    for line in lines:
        idx = [int(s) for s in line.split(",")]
        assert idx == sorted(idx) and len(idx) == 4
    code, out, _ = run(capsys, "enumerate", "--pattern", "2413", "--random", "16,3",
                       "--t", "all", "--json")
    payload = json.loads(out)
    assert payload["t"] == "all"
    assert all(len(c) == 4 for c in payload["copies"])


def test_enumerate_matches_oracle(capsys, warm_kernels):
    from patcount import oracle
    from patcount.perm import Pattern
    from patcount.rng import random_permutation

    code, out, _ = run(capsys, "enumerate", "--pattern", "1324", "--random", "20,9", "--t", "all")
    assert code == 0
    got = {tuple(int(s) for s in line.split(",")) for line in out.strip().splitlines() if line}
    p = random_permutation(20, 9)
    assert got == oracle.oracle_enumerate(p, Pattern.parse("1324"))


def test_determinism(capsys, warm_kernels):
    a = run(capsys, "count", "--pattern", "2413", "--random", "80,5", "--json")
    b = run(capsys, "count", "--pattern", "2413", "--random", "80,5", "--json")
    ja, jb = json.loads(a[1]), json.loads(b[1])
    ja.pop("seconds"), jb.pop("seconds")
    assert ja == jb


def test_threads_do_not_change_output(capsys, warm_kernels):
    outs = []
    for k in ("1", "3"):
        code, out, _ = run(capsys, "count", "--pattern", "2413", "--random", "120,4",
                           "--threads", k, "--json")
        assert code == 0
        payload = json.loads(out)
        payload.pop("seconds")
        outs.append(payload)
    assert outs[0] == outs[1]
    outs = []
    for k in ("1", "2"):
        code, out, _ = run(capsys, "count", "--pattern", "24135", "--random", "48,4",
                           "--threads", k, "--json")
        payload = json.loads(out)
        payload.pop("seconds")
        outs.append(payload)
    assert outs[0] == outs[1]


def test_recipes_generate_matches_shipped(capsys, tmp_path):
    out_path = tmp_path / "table.txt"
    code, out, _ = run(capsys, "recipes", "generate", "--out", str(out_path))
    assert code == 0
    from importlib.resources import files

    shipped = files("patcount").joinpath("data/recipes-k5.txt").read_text()
    assert out_path.read_text() == shipped
    # the two configurations quoted in the sources are present and valid
    text = out_path.read_text()
    assert any(line.startswith("12|345, horizontal below3 ---> ") for line in text.splitlines())
    assert any(line.startswith("1|3425, horizontal below3 ---> ") for line in text.splitlines())


def test_recipes_check(capsys):
    code, out, _ = run(capsys, "recipes", "check")
    assert code == 0
    assert "0 invalid" in out


def test_bench_csv_shape(capsys, warm_kernels):
    code, out, _ = run(capsys, "bench", "--sizes", "2^6,2^7", "--pattern", "2413",
                       "--epsilon", "0.3", "--seed", "2")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "pattern", "epsilon", "mode", "seconds", "count"]
    ns = [int(r[0]) for r in rows[1:]]
    assert ns == sorted(ns) and ns == [64, 128]


def test_selftest_quick(capsys):
    code, out, _ = run(capsys, "selftest", "--quick")
    assert code == 0
    assert "selftest passed" in out
