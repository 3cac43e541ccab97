"""Command-line front end.

Exit status: 0 on success or match, 1 on an identity mismatch, 2 on a usage
error, 3 when a requested group exceeds the enumeration budget.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .bijections import neg_flag_bijection
from .colored_perm import GroupSpec, WindowSyntaxError, format_window, parse_window
from .identities import (
    STAT_PAIRS,
    WREATH_EULERIAN_VARIANTS,
    BudgetExceeded,
    IdentityId,
    REGISTRY,
    distribution,
    verify,
)
from .polyhedral import (
    HalfOpenSimplex,
    cone_over,
    fpp_points,
    locate,
    parse_point,
    scaling_scheme,
    signed_simplex,
)
from .series import Q, T
from .statistics import all_statistics, classical_descents, fdes, fmajor, ndes, nmajor

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
WORKERS_ENV = "EULERMAHONIAN_WORKERS"


class UsageError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _spec(args) -> GroupSpec:
    return GroupSpec(args.r, args.n)


def _element(args):
    try:
        return parse_window(args.element, _spec(args))
    except WindowSyntaxError as exc:
        raise UsageError(str(exc)) from None


# -- stats ------------------------------------------------------------------------


def cmd_stats(args, out) -> int:
    out.write(_dump(all_statistics(_element(args))) + "\n")
    return EXIT_OK


# -- verify -----------------------------------------------------------------------


def acceptance_grid() -> list[tuple[str, int, int, int]]:
    """``(identity, r, n, K)`` points checked by the acceptance suite."""
    grid = []
    for n in range(1, 6):
        grid += [("carlitz", 1, n, 6), ("eulerianA", 1, n, 6)]
    grid += [("multivariateA", 1, n, 4) for n in range(1, 5)]
    rn = [(2, n) for n in range(1, 5)] + [(3, n) for n in range(1, 4)] + [(4, n) for n in range(1, 3)]
    for ident in (
        "wreathEulerian", "wreathNeg", "wreathFlag", "wreathFlagRk",
        "wreathNegMulti", "wreathFlagMulti", "wreathFlagRkMulti",
    ):
        grid += [(ident, r, n, 3) for r, n in rn]
    for n in range(1, 5):
        grid += [("chowGessel", 2, n, 5), ("chowGesselFlag", 2, n, 5)]
    for n in range(1, 4):
        grid += [("bNaturalMulti", 2, n, 3), ("bFlagMulti", 2, n, 3)]
    grid += [("dEulerian", 2, n, 5) for n in range(2, 6)]
    for n in range(2, 5):
        grid += [("dNeg", 2, n, 3), ("dNegMulti", 2, n, 3)]
    return grid


def _parse_range(text: str) -> list[int]:
    lo, _, hi = text.partition("-")
    lo_i = int(lo)
    hi_i = int(hi) if hi else lo_i
    if hi_i < lo_i:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo_i, hi_i + 1))


def _grid_points(args) -> list[tuple[str, int, int, int]]:
    if args.grid == "acceptance":
        pts = acceptance_grid()
        if args.id is not None:
            pts = [p for p in pts if p[0] == args.id]
        return pts
    if args.id is None:
        raise UsageError("--grid with ranges needs --id")
    fields = dict(part.split("=", 1) for part in args.grid.split(",") if "=" in part)
    if not fields or set(fields) - {"r", "n"}:
        raise UsageError("--grid expects 'acceptance' or 'r=A-B,n=C-D'")
    rs = _parse_range(fields.get("r", str(args.r)))
    ns = _parse_range(fields.get("n", str(args.n)))
    return [(args.id, r, n, args.K) for r in rs for n in ns]


def _verify_point(point, route="statistics", variant="des") -> dict:
    ident, r, n, K = point
    try:
        return verify(ident, GroupSpec(r, n), K, route=route, variant=variant).to_dict()
    except BudgetExceeded as exc:
        return {"id": ident, "r": r, "n": n, "K": K, "error": "budget", "message": str(exc)}


def _run_points(points, route, variant) -> list[dict]:
    workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    if workers <= 1 or len(points) < 2:
        return [_verify_point(p, route, variant) for p in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_point, points, [route] * len(points), [variant] * len(points)))


def cmd_verify(args, out) -> int:
    if args.grid is None:
        if args.id is None:
            raise UsageError("verify needs --id")
        if args.K is None:
            raise UsageError("verify needs --K")
        spec = GroupSpec(args.r, args.n)
        try:
            rep = verify(args.id, spec, args.K, route=args.route, variant=args.variant)
        except BudgetExceeded as exc:
            out.write(_dump({"id": args.id, "r": args.r, "n": args.n, "K": args.K,
                             "error": "budget", "message": str(exc)}) + "\n")
            return EXIT_BUDGET
        out.write(_dump(rep.to_dict()) + "\n")
        return EXIT_OK if rep.match else EXIT_MISMATCH
    if args.grid != "acceptance" and args.K is None:
        raise UsageError("--grid with ranges needs --K")
    points = _grid_points(args)
    if args.route == "geometric":
        points = [pt for pt in points if REGISTRY[IdentityId(pt[0])].multivariate]
    reports = _run_points(points, args.route, args.variant)
    for rep in reports:
        out.write(_dump(rep) + "\n")
    if any(r.get("error") == "budget" for r in reports):
        return EXIT_BUDGET
    return EXIT_OK if all(r["match"] for r in reports) else EXIT_MISMATCH


# -- distribution -----------------------------------------------------------------


def cmd_distribution(args, out) -> int:
    poly = distribution(_spec(args), args.pair)
    table = poly.to_table(T, Q)
    if args.format == "json":
        out.write(_dump({"r": args.r, "n": args.n, "pair": args.pair,
                         "table": table, "polynomial": poly.to_string()}) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t\\q"] + list(range(len(table[0]))))
        for i, row in enumerate(table):
            w.writerow([i] + row)
        out.write(buf.getvalue())
    else:
        out.write(poly.to_string() + "\n")
    return EXIT_OK


# -- bijection --------------------------------------------------------------------


def cmd_bijection(args, out) -> int:
    g = _element(args)
    h = neg_flag_bijection(g)
    out.write(_dump({
        "element": format_window(g),
        "image": format_window(h),
        "ndes": ndes(g),
        "nmajor": nmajor(g),
        "fdes": fdes(h),
        "fmajor": fmajor(h),
    }) + "\n")
    return EXIT_OK


# -- cone -------------------------------------------------------------------------


def cmd_cone(args, out) -> int:
    if args.signed:
        if args.r != 2:
            raise UsageError("--signed needs --r 2")
        s = signed_simplex(_element(args))
        scaling = scaling_scheme("unit", args.n)
    else:
        g = _element(args)
        if not g.is_plain:
            raise UsageError("unsigned cones are indexed by a color-free permutation")
        perm = g.letters
        if args.scaling == "wreath":
            s = HalfOpenSimplex(perm, classical_descents(perm), 1)
            scaling = scaling_scheme("wreath", args.n, args.r)
        elif args.scaling == "typeD":
            s = HalfOpenSimplex(perm, classical_descents(perm), 1)
            scaling = scaling_scheme("typeD", args.n)
        else:
            # cube [0, r]^n
            s = HalfOpenSimplex(perm, classical_descents(perm), args.r)
            scaling = scaling_scheme("unit", args.n)
    c = cone_over(s, scaling)
    method = args.method or ("shiftWhole" if c.unimodular_base else "shiftOffBoundary")
    pts = fpp_points(c, method)
    if args.format == "json":
        out.write(_dump({
            "simplex": s.inequalities(),
            "generators": [list(v) for v in c.generators],
            "open": list(c.open),
            "determinant": c.determinant,
            "method": method,
            "points": [list(p) for p in pts],
        }) + "\n")
    else:
        out.write(f"simplex {s.inequalities()}\n")
        for v, o in zip(c.generators, c.open):
            out.write("generator " + " ".join(map(str, v)) + (" open\n" if o else "\n"))
        out.write(f"determinant {c.determinant}\n")
        for p in pts:
            out.write("(" + ",".join(map(str, p)) + ")\n")
    return EXIT_OK


# -- locate -----------------------------------------------------------------------


def cmd_locate(args, out) -> int:
    try:
        x = parse_point(args.point)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad point: {exc}") from None
    loc = locate(x, args.n, args.r)
    if args.format == "json":
        out.write(_dump({"perm": list(loc.perm), "chain": loc.chain,
                         "simplex": loc.simplex.inequalities()}) + "\n")
    else:
        out.write("[" + ",".join(map(str, loc.perm)) + "]\n")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="eulermahonian",
        description="Statistics and generating-function identities for colored permutation groups.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def group_flags(sp, need_n=True):
        sp.add_argument("--r", type=int, default=1, help="number of colors (default 1)")
        sp.add_argument("--n", type=int, required=need_n, default=None if need_n else 1)

    sp = sub.add_parser("stats", help="every statistic of one element")
    group_flags(sp)
    sp.add_argument("--element", required=True, help='window such as "[1^3 4 2^1 3]"')
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("verify", help="check a generating-function identity")
    group_flags(sp, need_n=False)
    sp.add_argument("--id", choices=[i.value for i in IdentityId])
    sp.add_argument("--K", type=int)
    sp.add_argument("--route", choices=["statistics", "geometric"], default="statistics")
    sp.add_argument("--variant", choices=WREATH_EULERIAN_VARIANTS, default="des",
                    help="descent statistic for wreathEulerian")
    sp.add_argument("--grid", help="'acceptance' or 'r=A-B,n=C-D'")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("distribution", help="joint distribution of a statistic pair")
    group_flags(sp)
    sp.add_argument("--pair", required=True, choices=sorted(STAT_PAIRS))
    sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
    sp.set_defaults(func=cmd_distribution)

    sp = sub.add_parser("bijection", help="image under the negative-to-flag bijection")
    group_flags(sp)
    sp.add_argument("--element", required=True)
    sp.set_defaults(func=cmd_bijection)

    sp = sub.add_parser("cone", help="generators and parallelepiped points of a cone")
    group_flags(sp)
    sp.add_argument("--element", required=True, help="permutation (or signed window with --signed)")
    sp.add_argument("--scaling", choices=["unit", "wreath", "typeD"], default="unit",
                    help="unit: cube [0,r]^n; wreath/typeD: scaled generators over [0,1]^n")
    sp.add_argument("--signed", action="store_true", help="simplex of [-1,1]^n")
    sp.add_argument("--method", choices=["shiftWhole", "shiftOffBoundary", "direct"])
    sp.add_argument("--format", choices=["json", "text"], default="text")
    sp.set_defaults(func=cmd_cone)

    sp = sub.add_parser("locate", help="simplex of the cube triangulation containing a point")
    group_flags(sp)
    sp.add_argument("--point", required=True, help='comma-separated p/q tokens, e.g. "1/2,1/3"')
    sp.add_argument("--format", choices=["json", "text"], default="json")
    sp.set_defaults(func=cmd_locate)
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except (UsageError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
