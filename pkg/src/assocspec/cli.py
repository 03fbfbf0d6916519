"""Command-line front end: tables, counts, grid algebra and identity checks."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from itertools import product
from math import gcd

from . import grids
from .grids import GridError, format_grid, parse_generators, parse_grid
from .quasigroup import (DEFAULT_BUDGET, BudgetExceeded, QuasigroupError, counterexample,
                         difference_grid, fine_spectrum_grid, make_identity, make_quasigroup,
                         parse_quasigroup, satisfies)
from .relations import RelationError, RelationSpec, count_classes
from .tables import HEADERS, table_sequences
from .trees import (BracketingSyntaxError, GuardExceeded, TreeError, enumerate_trees,
                    format_bracketing)

EXIT_OK, EXIT_USAGE, EXIT_GUARD, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4, 5


class UsageError(ValueError):
    pass


def _check_n(n: int, args) -> None:
    if n < 1:
        raise UsageError("n must be positive")
    if n > args.max_n:
        raise GuardExceeded(f"n={n} exceeds --max-n {args.max_n}")


def _relation_from_args(args) -> RelationSpec:
    rel = args.relation.upper()

    def need(*names):
        missing = [f"--{x}" for x in names if getattr(args, x) is None]
        if missing:
            raise UsageError(f"relation {args.relation} needs {' '.join(missing)}")
        return [getattr(args, x) for x in names]

    if rel in ("D", "L", "R"):
        (k,) = need("k")
        return RelationSpec(rel, (k,))
    if rel == "LR":
        return RelationSpec.left_right(*need("k", "l"))
    if rel == "ABM":
        return RelationSpec.abm(*need("a", "b", "m"))
    if rel == "GRID":
        (gens,) = need("gens")
        return RelationSpec.from_grid(parse_grid(gens))
    raise UsageError(f"unknown relation {args.relation!r}")


def cmd_count(args) -> int:
    spec = _relation_from_args(args)
    _check_n(args.n, args)
    print(count_classes(args.n, spec, threads=args.threads))
    return EXIT_OK


def cmd_table(args) -> int:
    _check_n(args.max_n, args)
    header = HEADERS[args.table]
    rows = table_sequences(args.table, args.max_n, threads=args.threads)
    if args.format == "csv":
        out = csv.writer(sys.stdout, lineterminator="\n")
        out.writerow(header)
        for params, seq in rows:
            for n, count in enumerate(seq, 1):
                out.writerow([*params, n, count])
    else:
        objs = [{**dict(zip(header, params)), "sequence": seq} for params, seq in rows]
        json.dump(objs, sys.stdout, indent=1)
        sys.stdout.write("\n")
    return EXIT_OK


def _grid_json(g: grids.Grid) -> dict:
    return {"text": format_grid(g), "dim": g.dim, "u": g.u, "v": g.v, "w": g.w,
            "index": g.index}


def cmd_grid(args) -> int:
    g = parse_grid(args.gens) if args.gens is not None else None
    if args.op != "coatoms" and g is None:
        raise UsageError("--gens is required")
    op = args.op
    if op == "canonical":
        result = {"grid": _grid_json(g)}
        text = format_grid(g)
    elif op == "contains":
        if args.point is None:
            raise UsageError("--point is required")
        (pt,) = parse_generators(args.point)
        ok = grids.contains(g, pt)
        result = {"grid": _grid_json(g), "point": list(pt), "contains": ok}
        text = "true" if ok else "false"
    elif op in ("meet", "join"):
        if args.other is None:
            raise UsageError("--other is required")
        h = getattr(grids, op)(g, parse_grid(args.other))
        result = {"grid": _grid_json(h)}
        text = format_grid(h)
    elif op == "quotient":
        d1, d2 = grids.quotient_invariants(g)
        result = {"grid": _grid_json(g), "invariants": [d1, d2]}
        text = f"Z_{d1} x Z_{d2}"
    elif op == "coatoms":
        if args.p is None:
            raise UsageError("--p is required")
        cs = grids.coatoms(args.p)
        result = {"coatoms": [_grid_json(c) for c in cs]}
        text = "\n".join(format_grid(c) for c in cs)
    else:
        t1, t2 = grids.treealise(g)
        ok = grids.span_difference(t1, t2) == g
        result = {"grid": _grid_json(g), "leaves": t1.leaf_count, "round_trip": ok,
                  "trees": [{"variables": format_bracketing(t),
                             "structure_bits": format_bracketing(t, "structure_bits")}
                            for t in (t1, t2)]}
        lines = [f"grid {format_grid(g)}", f"leaves {t1.leaf_count}"]
        for name, t in (("T", t1), ("T'", t2)):
            lines.append(f"{name} {format_bracketing(t)}")
            lines.append(f"{name} bits {format_bracketing(t, 'structure_bits')}")
        lines.append(f"round-trip {'OK' if ok else 'FAILED'}")
        text = "\n".join(lines)
        if not ok:
            _emit(args, result, text)
            return EXIT_MISMATCH
    _emit(args, result, text)
    return EXIT_OK


def _emit(args, result: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(result, indent=1))
    else:
        print(text)


def cmd_identity(args) -> int:
    if args.op == "check":
        q = parse_quasigroup(args.quasigroup)
        ident = make_identity(args.lhs, args.rhs)
        fine = fine_spectrum_grid(q)
        diff = difference_grid(ident)
        verdict = satisfies(q, ident, "closed_form")
        result = {"identity": str(ident), "quasigroup": str(q), "satisfied": verdict,
                  "fine_spectrum_grid": format_grid(fine), "difference_grid": format_grid(diff)}
        lines = [f"{'true' if verdict else 'false'}: {ident} in {q}",
                 f"fine spectrum grid {format_grid(fine)}",
                 f"difference grid {format_grid(diff)}"]
        if not verdict and q.order ** ident.size <= args.budget:
            cex = counterexample(q, ident, args.budget)
            result["counterexample"] = list(cex)
            lines.append(f"counterexample {cex}")
        _emit(args, result, "\n".join(lines))
        return EXIT_OK
    premise = make_identity(args.from_lhs, args.from_rhs)
    conclusion = make_identity(args.to_lhs, args.to_rhs)
    g1, g2 = difference_grid(premise), difference_grid(conclusion)
    verdict = grids.contains_grid(g1, g2)
    result = {"premise": str(premise), "conclusion": str(conclusion), "follows": verdict,
              "premise_grid": format_grid(g1), "conclusion_grid": format_grid(g2)}
    text = "\n".join([f"{'true' if verdict else 'false'}: {premise} => {conclusion}",
                      f"premise grid {format_grid(g1)}",
                      f"conclusion grid {format_grid(g2)}"])
    _emit(args, result, text)
    return EXIT_OK


def _moduli(text: str) -> list[int]:
    lo, sep, hi = text.partition("-")
    try:
        return list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
    except ValueError:
        raise UsageError(f"bad modulus range {text!r}") from None


def cmd_oracle(args) -> int:
    _check_n(args.n, args)
    trees = list(enumerate_trees(args.n))
    pairs = [(s, t) for s in trees for t in trees]
    cases = 0
    for m in _moduli(args.m):
        if m ** args.n > args.budget:
            raise BudgetExceeded(f"{m}^{args.n} assignments exceed budget {args.budget}")
        units = [x for x in range(1, m) if gcd(x, m) == 1]
        for a, b in product(units, repeat=2):
            q = make_quasigroup([(m, a, b)])
            for s, t in pairs:
                ident = make_identity(s, t)
                verdicts = {meth: satisfies(q, ident, meth, args.budget)
                            for meth in ("brute_force", "closed_form", "grid")}
                cases += 1
                if len(set(verdicts.values())) != 1:
                    print(f"MISMATCH {q} {ident} {verdicts}")
                    print(f"counterexample {counterexample(q, ident, args.budget)}")
                    return EXIT_MISMATCH
        print(f"OK: m={m}, {len(units) ** 2} unit pairs x {len(pairs)} bracketing pairs, "
              f"all agree")
    print(f"OK: {cases} cases, all three methods agree")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-n", type=int, default=14, help="largest tree size allowed")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="brute-force evaluation budget")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for counting (default: all cores)")
    common.add_argument("--format", choices=("text", "csv", "json"), default=None)

    parser = argparse.ArgumentParser(prog="assocspec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count classes of trees")
    p.add_argument("--relation", required=True, help="D, L, R, LR, abm or grid")
    p.add_argument("--n", type=int, required=True)
    for flag in ("k", "l", "a", "b", "m"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--gens", help='grid generators "r1,s1;r2,s2"')
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", parents=[common], help="reproduce a reference table")
    p.add_argument("table", type=int, choices=(1, 2, 3, 4))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("grid", parents=[common], help="subgroups of Z x Z")
    p.add_argument("op", choices=("canonical", "contains", "meet", "join", "quotient",
                                  "coatoms", "treealise"))
    p.add_argument("--gens")
    p.add_argument("--other", help="second grid for meet and join")
    p.add_argument("--point", help='point "r,s" for contains')
    p.add_argument("--p", type=int, help="prime for coatoms")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("identity", parents=[common], help="bracketing identities")
    p.add_argument("op", choices=("check", "consequence"))
    p.add_argument("--lhs")
    p.add_argument("--rhs")
    p.add_argument("--quasigroup", help='components "m:a,b;..."')
    for side in ("from-lhs", "from-rhs", "to-lhs", "to-rhs"):
        p.add_argument(f"--{side}")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("oracle", parents=[common], help="cross-check satisfaction methods")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", default="2-7", help="modulus or range like 2-7")
    p.set_defaults(func=cmd_oracle)
    return parser


def _require(args, *names) -> None:
    missing = [f"--{x.replace('_', '-')}" for x in names if getattr(args, x) is None]
    if missing:
        raise UsageError(f"missing {' '.join(missing)}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        from .counting import default_threads
        args.threads = default_threads()
    if args.format is None:
        args.format = "csv" if args.command == "table" else "text"
    try:
        if args.command == "table" and args.format == "text":
            raise UsageError("table output is csv or json")
        if args.command == "identity":
            if args.op == "check":
                _require(args, "lhs", "rhs", "quasigroup")
            else:
                _require(args, "from_lhs", "from_rhs", "to_lhs", "to_rhs")
        return args.func(args)
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, RelationError, GridError, QuasigroupError, BracketingSyntaxError,
            TreeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
