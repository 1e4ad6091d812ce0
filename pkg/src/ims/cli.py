"""Command-line frontend.

Subcommands: normalize, eq, entropy, kset, complete, verify, selftest.
Text output is for reading; --format json is the stable machine surface.
Exit codes: 0 success (eq: expressions equal), 1 eq/verify found a
difference or violation, 2 usage or parse errors, 3 internal budget
exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import atoms as at
from . import expr as ex
from . import gsbasis as gs
from . import imeasure as im
from . import markov as mk
from .selftest import run_criteria, CRITERIA


@dataclass
class CliConfig:
    command: str
    n: int = 0
    markov: bool = False
    fmt: str = "text"
    seed: int = 0
    trials: int = 1000
    max_rounds: int = 8


def _max_n() -> int:
    raw = os.environ.get("IMS_MAX_N", "16")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"ims: bad IMS_MAX_N value {raw!r}")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ims", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, need_n=True):
        if need_n:
            p.add_argument("-n", type=int, required=True, help="variable count")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("normalize", help="canonical atom form of an expression")
    common(p)
    p.add_argument("--markov", action="store_true", help="reduce modulo the chain constraints")
    p.add_argument("expr")

    p = sub.add_parser("eq", help="decide whether two expressions are equal")
    common(p)
    p.add_argument("--markov", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("expr1")
    p.add_argument("expr2")

    p = sub.add_parser("entropy", help="entropy decomposition of an expression")
    common(p)
    p.add_argument("--markov", action="store_true")
    p.add_argument("expr")

    p = sub.add_parser("kset", help="eliminated atoms of the n-variable chain")
    common(p)

    p = sub.add_parser("complete", help="run completion on a presentation file")
    common(p)
    p.add_argument("--pres", required=True, help="presentation file (or a bundled name)")
    p.add_argument("--max-rounds", type=int, default=8)

    p = sub.add_parser("verify", help="measure the chain constraints of a distribution")
    p.add_argument("-n", type=int, help="variable count (with --random-markov)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--dist", help="distribution JSON file")
    p.add_argument("--random-markov", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--criteria", help="comma-separated criterion numbers (default all)")
    return ap


def _parse_expr(text: str, n: int) -> ex.Expr:
    try:
        return ex.parse(text, n)
    except ex.ParseError as err:
        raise SystemExit(f"ims: {err}")


def _check_n(n: int, markov: bool):
    cap = _max_n()
    if n < 1 or n > cap:
        raise SystemExit(f"ims: n={n} outside 1..{cap} (IMS_MAX_N)")
    if markov and n < 3:
        raise SystemExit("ims: chain mode needs n >= 3")


def _emit(payload, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _cmd_normalize(args) -> int:
    _check_n(args.n, args.markov)
    e = _parse_expr(args.expr, args.n)
    if args.markov:
        s = mk.markov_normalize(e, args.n)
        universe = mk.reduced_universe(args.n)
    else:
        s = at.normalize(e, args.n)
        universe = None
    _emit(s.to_json_dict(), args.format, at.render_atoms(s, universe))
    return 0


def _cmd_eq(args) -> int:
    _check_n(args.n, args.markov)
    e1 = _parse_expr(args.expr1, args.n)
    e2 = _parse_expr(args.expr2, args.n)
    verdict = im.check_identity(
        e1, e2, args.n, mode="markov" if args.markov else "free",
        trials=args.trials, seed=args.seed,
    )
    cx = verdict.counterexample
    payload = {
        "equal": verdict.equal,
        "counterexample": None
        if cx is None
        else {"seed": cx.seed, "f1": cx.f1, "f2": cx.f2, "alphabets": list(cx.alphabets)},
    }
    if verdict.equal:
        text = "equal"
    elif cx is not None:
        text = f"not_equal (seed {cx.seed}: f1={cx.f1:.6g}, f2={cx.f2:.6g})"
    else:
        text = "not_equal (no numeric counterexample found)"
    _emit(payload, args.format, text)
    return 0 if verdict.equal else 1


def _cmd_entropy(args) -> int:
    _check_n(args.n, args.markov)
    e = _parse_expr(args.expr, args.n)
    s = mk.markov_normalize(e, args.n) if args.markov else at.normalize(e, args.n)
    combo = im.symbolic_measure(s)
    _emit(combo.to_json_dict(), args.format, combo.render())
    return 0


def _cmd_kset(args) -> int:
    _check_n(args.n, True)
    ks = mk.k_set(args.n)
    text = "eliminated: " + " ".join(str(k) for k in ks.eliminated)
    _emit(ks.to_json_dict(), args.format, text)
    return 0


def _cmd_complete(args) -> int:
    _check_n(args.n, False)
    if os.path.exists(args.pres):
        with open(args.pres) as f:
            pres = gs.parse_presentation(f.read(), args.n)
    elif args.pres in gs.bundled_presentation_names():
        text, bn = gs.bundled_presentation_text(args.pres)
        if bn != args.n:
            raise SystemExit(f"ims: bundled {args.pres} is for n={bn}")
        pres = gs.parse_presentation(text, args.n)
    else:
        raise SystemExit(f"ims: no such presentation file {args.pres!r}")
    try:
        res = gs.complete(pres, args.n, max_rounds=args.max_rounds)
    except gs.ReductionBudgetError as err:
        print(f"ims: {err}", file=sys.stderr)
        return 3
    lines = [gs.render_relation(gs.thaw_poly(fp), args.n) for fp in res.presentation.relations]
    payload = {
        "n": args.n,
        "converged": res.converged,
        "rounds": res.rounds,
        "relations": lines,
        "eliminated": list(gs.singleton_eliminations(res.presentation)),
    }
    text = "\n".join([f"# completed in {res.rounds} round(s)"] + lines)
    _emit(payload, args.format, text)
    return 0 if res.converged else 3


def _cmd_verify(args) -> int:
    if args.dist:
        d = im.load_distribution(args.dist)
        reports = [im.verify_markov_vanishing(d)]
    elif args.random_markov:
        if args.n is None:
            raise SystemExit("ims: --random-markov needs -n")
        _check_n(args.n, True)
        reports = [
            im.verify_markov_vanishing(im.random_markov_distribution(args.n, 2, args.seed + t))
            for t in range(args.trials)
        ]
    else:
        raise SystemExit("ims: verify needs --dist FILE or --random-markov")
    all_ok = all(r.ok for r in reports)
    if args.format == "json":
        print(json.dumps([r.to_json_dict() for r in reports]))
    else:
        for idx, r in enumerate(reports):
            tag = f"[{idx}] " if len(reports) > 1 else ""
            for i, v in r.constraint_sums:
                mark = "ok" if abs(v) <= r.tolerance else "VIOLATED"
                print(f"{tag}constraint {i}: sum = {v:+.3e} ({mark})")
            for k, v in r.atom_values:
                print(f"{tag}atom y{k}: mu = {v:+.3e} (informational)")
    return 0 if all_ok else 1


def _cmd_selftest(args) -> int:
    numbers = None
    if args.criteria:
        try:
            numbers = [int(tok) for tok in args.criteria.split(",") if tok.strip()]
        except ValueError:
            raise SystemExit(f"ims: bad criteria list {args.criteria!r}")
        unknown = [x for x in numbers if x not in CRITERIA]
        if unknown:
            raise SystemExit(f"ims: unknown criteria {unknown}")
    return 0 if run_criteria(numbers) else 1


_HANDLERS = {
    "normalize": _cmd_normalize,
    "eq": _cmd_eq,
    "entropy": _cmd_entropy,
    "kset": _cmd_kset,
    "complete": _cmd_complete,
    "verify": _cmd_verify,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code not in (0, None) else 0
    try:
        return _HANDLERS[args.command](args)
    except SystemExit as err:
        if isinstance(err.code, str):
            print(err.code, file=sys.stderr)
            return 2
        return err.code if err.code is not None else 0
    except (ValueError, OSError) as err:
        print(f"ims: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
