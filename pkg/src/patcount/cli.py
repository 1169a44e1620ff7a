"""Command-line interface: count, enumerate, recipes, bench, selftest.

Exit codes: 0 success, 1 test/self-check failure, 2 usage or input errors.
All randomness derives from explicit seeds through the portable generator in
``rng``, so identical flags give byte-identical output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

from .errors import PatcountError
from .perm import Pattern, Permutation, ingest, parse_sequence_text
from .rng import random_permutation


def _load_input(args) -> Permutation:
    if args.random:
        try:
            n_s, seed_s = args.random.split(",")
            n, seed = int(n_s), int(seed_s)
        except ValueError:
            raise PatcountError(f"--random expects 'n,seed', got {args.random!r}") from None
        return random_permutation(n, seed)
    if not args.input:
        raise PatcountError("provide --input PATH or --random n,seed")
    text = sys.stdin.read() if args.input == "-" else open(args.input).read()
    return ingest(parse_sequence_text(text))


def _fmt_count(value: float, exact: bool) -> str:
    if exact:
        return str(int(round(value)))
    return f"{value:.6g}"


def cmd_count(args) -> int:
    sigma = Pattern.parse(args.pattern)
    p = _load_input(args)
    eps = None if args.exact else args.epsilon
    from .api import count

    t0 = time.perf_counter()
    value = count(p, sigma, eps, threads=args.threads)
    dt = time.perf_counter() - t0
    mode = "exact" if args.exact else "approx"
    if args.json:
        payload = {
            "count": int(round(value)) if args.exact else float(f"{value:.6g}"),
            "pattern": str(sigma),
            "n": p.n,
            "epsilon": None if args.exact else args.epsilon,
            "mode": mode,
            "relative_error_bound": None if args.exact else args.epsilon,
            "seconds": round(dt, 6),
        }
        print(json.dumps(payload))
    else:
        print(f"count={_fmt_count(value, args.exact)} pattern={sigma} n={p.n} "
              f"epsilon={'-' if args.exact else args.epsilon} mode={mode} seconds={dt:.3f}")
    return 0


def cmd_enumerate(args) -> int:
    sigma = Pattern.parse(args.pattern)
    p = _load_input(args)
    t = None if args.t == "all" else int(args.t)
    from .listing import list_copies

    t0 = time.perf_counter()
    copies = list_copies(p, sigma, t)
    dt = time.perf_counter() - t0
    if args.json:
        print(json.dumps({"pattern": str(sigma), "n": p.n, "t": args.t,
                          "copies": [list(c) for c in copies], "seconds": round(dt, 6)}))
    else:
        for c in copies:
            print(",".join(str(i) for i in c))
    return 0


def cmd_recipes(args) -> int:
    from . import recipes as R

    if args.action == "generate":
        table = R.search_recipes()
        text = R.emit_table(table)
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w") as fh:
                fh.write(text)
            print(f"wrote {len(text.splitlines())} recipes to {args.out}")
        return 0
    if args.action == "check":
        table = R.load_default_table() if args.out == "-" else R.parse_table(open(args.out).read())
        bad = 0
        for key, entry in sorted(table.items()):
            if isinstance(entry, R.FactorRecipe):
                continue
            ok, reason = R.check_recipe(entry)
            if not ok:
                print(f"INVALID {key}: {reason}", file=sys.stderr)
                bad += 1
        print(f"checked {len(table)} entries, {bad} invalid")
        return 1 if bad else 0
    raise PatcountError(f"unknown recipes action {args.action!r}")


def cmd_bench(args) -> int:
    from .api import count

    sizes = []
    for tok in args.sizes.split(","):
        tok = tok.strip()
        sizes.append(2 ** int(tok[2:]) if tok.startswith("2^") else int(tok))
    patterns = [s.strip() for s in args.pattern.split(",")]
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    writer = csv.writer(out)
    writer.writerow(["n", "pattern", "epsilon", "mode", "seconds", "count"])
    for n in sizes:
        p = random_permutation(n, args.seed)
        for pat in patterns:
            sigma = Pattern.parse(pat)
            t0 = time.perf_counter()
            value = count(p, sigma, args.epsilon, threads=args.threads)
            dt = time.perf_counter() - t0
            writer.writerow([n, pat, args.epsilon, "approx", f"{dt:.4f}", f"{value:.6g}"])
            out.flush()
    if args.accuracy:
        from .oracle import oracle_count

        for pat in patterns:
            sigma = Pattern.parse(pat)
            n = min(args.accuracy_n, 150 if sigma.k <= 4 else 70)
            p = random_permutation(n, args.seed)
            truth = oracle_count(p, sigma)
            got = count(p, sigma, args.epsilon)
            ratio = got / truth if truth else math.nan
            writer.writerow([n, pat, args.epsilon, "accuracy", f"{ratio:.6f}", truth])
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    failures = run_selftest(quick=args.quick)
    if failures:
        for f in failures:
            print(f"FAIL: {f}", file=sys.stderr)
        return 1
    print("selftest passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="patcount",
                                 description="approximate permutation pattern counting (k <= 5)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_io(sp):
        sp.add_argument("--pattern", required=True, help="pattern digits, length 1..5")
        sp.add_argument("--epsilon", type=float, default=0.1)
        sp.add_argument("--input", help="path to the sequence file ('-' for stdin)")
        sp.add_argument("--random", help="n,seed: portable random permutation")
        sp.add_argument("--exact", action="store_true", help="exact decomposition mode")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("count", help="approximate or exact copy count")
    add_io(sp)
    sp.set_defaults(fn=cmd_count)

    sp = sub.add_parser("enumerate", help="list t copies")
    add_io(sp)
    sp.add_argument("--t", default="10", help="copy budget or 'all'")
    sp.set_defaults(fn=cmd_enumerate)

    sp = sub.add_parser("recipes", help="recipe table tools")
    sp.add_argument("action", choices=["generate", "check"])
    sp.add_argument("--out", default="-", help="table path ('-' = stdout / packaged table)")
    sp.set_defaults(fn=cmd_recipes)

    sp = sub.add_parser("bench", help="scaling/accuracy suites, CSV output")
    sp.add_argument("--sizes", default="2^10,2^11,2^12")
    sp.add_argument("--pattern", default="2413")
    sp.add_argument("--epsilon", type=float, default=0.1)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--accuracy", action="store_true")
    sp.add_argument("--accuracy-n", type=int, default=150)
    sp.add_argument("--out", default="-")
    sp.set_defaults(fn=cmd_bench)

    sp = sub.add_parser("selftest", help="desk-scale oracle equivalence and invariants")
    sp.add_argument("--quick", action="store_true")
    sp.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except PatcountError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
