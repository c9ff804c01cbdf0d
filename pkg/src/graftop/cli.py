"""Command-line front end: parse trees and bracket expressions, run the
compositions and products, list basis trees, and drive the verification
suites.

Exit codes: 0 success (including weight-mismatch compositions, which print
``0``), 1 verification failure, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import Combination
from .errors import ParseError
from .operad import arrow_lambda, butcher_product, circ_sum, compose_lambda, nap_compose
from .presentation import parse_bracket, phi, psi
from .trees import enumerate_labeled_trees, parse_tree
from .verify import Universe, reports_to_json, run_suite


def _parse_lambda(text: str) -> Fraction | None:
    if text == "symbolic":
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {text!r}", 0)


def _combination_json(combo: Combination, key: str) -> dict:
    return {
        "terms": [
            {
                "coeff": [[e, c.numerator, c.denominator] for e, c in poly.terms()],
                key: str(term),
            }
            for term, poly in combo.terms()
        ]
    }


def _emit_combination(combo: Combination, as_json: bool, key: str) -> None:
    if as_json:
        print(json.dumps(_combination_json(combo, key)))
    else:
        print(str(combo))


def _maybe_specialize(combo: Combination, lam: Fraction | None) -> Combination:
    return combo if lam is None else combo.specialize(lam)


def _cmd_compose(args) -> int:
    S = parse_tree(args.S)
    T = parse_tree(args.T)
    combo = _maybe_specialize(compose_lambda(S, S.ref(args.vertex), T), args.lam)
    _emit_combination(combo, args.json, "tree")
    return 0


def _cmd_arrow(args) -> int:
    combo = _maybe_specialize(arrow_lambda(parse_tree(args.T), parse_tree(args.S)), args.lam)
    _emit_combination(combo, args.json, "tree")
    return 0


def _cmd_circsum(args) -> int:
    combo = _maybe_specialize(circ_sum(parse_tree(args.T), parse_tree(args.S)), args.lam)
    _emit_combination(combo, args.json, "tree")
    return 0


def _cmd_butcher(args) -> int:
    tree = butcher_product(parse_tree(args.T), parse_tree(args.S))
    print(json.dumps({"tree": tree.encoding}) if args.json else tree.encoding)
    return 0


def _cmd_nap(args) -> int:
    S = parse_tree(args.S)
    T = parse_tree(args.T)
    v = S.ref(args.vertex)
    if T.total_weight != v.weight:
        print(json.dumps({"terms": []}) if args.json else "0")
        return 0
    tree = nap_compose(S, v, T)
    print(json.dumps({"tree": tree.encoding}) if args.json else tree.encoding)
    return 0


def _cmd_psi(args) -> int:
    combo = _maybe_specialize(psi(parse_tree(args.T)), args.lam)
    _emit_combination(combo, args.json, "expr")
    return 0


def _cmd_phi(args) -> int:
    combo = _maybe_specialize(phi(parse_bracket(args.expr)), args.lam)
    _emit_combination(combo, args.json, "tree")
    return 0


def _cmd_enumerate(args) -> int:
    if args.weights:
        weights = [int(w) for w in args.weights.split(",")]
    else:
        weights = [1] * args.n
    trees = enumerate_labeled_trees(args.n, weights)
    if args.json:
        print(json.dumps({"trees": [t.encoding for t in trees]}))
    else:
        for t in trees:
            print(t.encoding)
    return 0


def _cmd_dims(args) -> int:
    dim = args.n ** (args.n - 1)
    if args.json:
        payload = {"n": args.n, "dim": dim}
        if args.wmax:
            payload["by_total_weight"] = _dims_by_weight(args.n, args.wmax, dim)
        print(json.dumps(payload))
        return 0
    print(dim)
    if args.wmax:
        for total, count in _dims_by_weight(args.n, args.wmax, dim):
            print(f"total={total} dim={count}")
    return 0


def _dims_by_weight(n: int, wmax: int, dim: int) -> list[tuple[int, int]]:
    import itertools

    counts: dict[int, int] = {}
    for vec in itertools.product(range(1, wmax + 1), repeat=n):
        counts[sum(vec)] = counts.get(sum(vec), 0) + 1
    return [(total, counts[total] * dim) for total in sorted(counts)]


def _cmd_check(args) -> int:
    universe = None
    if args.nmax or args.wmax:
        universe = Universe(args.nmax or 3, args.wmax or 3)
    reports = run_suite(args.suite, universe, weight_bound=args.weight_bound)
    if args.json:
        print(reports_to_json(reports))
    else:
        for report in reports:
            print(report.summary())
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graftop",
        description="Exact compositions, grafting products, and bracket "
        "conversions on weighted rooted trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_lambda(p):
        p.add_argument(
            "--lambda",
            dest="lam",
            default="symbolic",
            help="specialize the deformation parameter to a rational (default: symbolic)",
        )

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("compose", help="graded partial composition at a labeled vertex")
    p.add_argument("-S", required=True, help="host tree")
    p.add_argument("-v", dest="vertex", required=True, help="label of the slot vertex")
    p.add_argument("-T", required=True, help="inserted tree")
    add_lambda(p)
    add_json(p)
    p.set_defaults(handler=_cmd_compose)

    p = sub.add_parser("arrow", help="deformed grafting product T <- S")
    p.add_argument("-T", required=True)
    p.add_argument("-S", required=True)
    add_lambda(p)
    add_json(p)
    p.set_defaults(handler=_cmd_arrow)

    p = sub.add_parser("circsum", help="sum of compositions over all slots of T")
    p.add_argument("-T", required=True)
    p.add_argument("-S", required=True)
    add_lambda(p)
    add_json(p)
    p.set_defaults(handler=_cmd_circsum)

    p = sub.add_parser("butcher", help="root graft of S onto T")
    p.add_argument("-T", required=True)
    p.add_argument("-S", required=True)
    add_json(p)
    p.set_defaults(handler=_cmd_butcher)

    p = sub.add_parser("nap", help="root-only composition at a labeled vertex")
    p.add_argument("-S", required=True)
    p.add_argument("-v", dest="vertex", required=True)
    p.add_argument("-T", required=True)
    add_json(p)
    p.set_defaults(handler=_cmd_nap)

    p = sub.add_parser("psi", help="rewrite a tree into bracket expressions")
    p.add_argument("-T", required=True)
    add_lambda(p)
    add_json(p)
    p.set_defaults(handler=_cmd_psi)

    p = sub.add_parser("phi", help="evaluate a bracket expression into trees")
    p.add_argument("-e", dest="expr", required=True)
    add_lambda(p)
    add_json(p)
    p.set_defaults(handler=_cmd_phi)

    p = sub.add_parser("enumerate", help="all labeled trees on n vertices")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--weights", help="comma-separated weights a1,..,an (default all 1)")
    add_json(p)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("dims", help="basis counts for n-vertex components")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--wmax", type=int, help="also tabulate counts by total weight")
    add_json(p)
    p.set_defaults(handler=_cmd_dims)

    p = sub.add_parser("check", help="run verification suites")
    p.add_argument(
        "--suite",
        default="all",
        choices=["all", "assoc", "deform", "spec", "iso", "morph"],
    )
    p.add_argument("--nmax", type=int, help="universe vertex bound")
    p.add_argument("--wmax", type=int, help="universe weight bound")
    p.add_argument("--weight-bound", type=int, default=5, help="morphism truncation bound")
    add_json(p)
    p.set_defaults(handler=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "lam") and isinstance(args.lam, str):
        try:
            args.lam = _parse_lambda(args.lam)
        except ParseError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        return args.handler(args)
    except ValueError as exc:
        # covers ParseError and TreeError as well
        print(f"error: {exc}", file=sys.stderr)
        return 2


run = main


if __name__ == "__main__":
    sys.exit(main())
