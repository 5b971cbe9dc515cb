"""Command-line front door.

``plan``          - terrain planning with optimality/infeasibility certificates
``check``         - law suite over the built-in instances vs expected statuses
``codesign-demo`` - the market example evaluated end to end

Exit codes: 0 success (including certified infeasibility and expected law
failures), 1 a law deviated from its expected status, 2 usage/input error.
"""

from __future__ import annotations

import argparse
import sys

from .berg import SteepnessInterval, Terrain, build_terrain_graph
from .berg.planner import SCHEMAS, format_plan_result, plan
from .berg.domains import DOMAINS
from .berg.terrain import TerrainFormatError
from .codesign import (
    dp_identity,
    incompat_dp,
    derived_nps,
    market_example,
    no_free_lunch,
    np_compose_right_witness,
)
from .registry import LAWS, builtin_bundles, run_laws


class InputError(Exception):
    pass


def _parse_pair(text: str, what: str, cast):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"{what} must be two comma-separated values, got {text!r}")
    try:
        return cast(parts[0]), cast(parts[1])
    except ValueError as exc:
        raise InputError(f"bad {what} {text!r}: {exc}") from exc


def cmd_plan(args) -> int:
    row, col = _parse_pair(args.start, "--start", int)
    grow, gcol = _parse_pair(args.goal, "--goal", int)
    lo, hi = _parse_pair(args.sigma, "--sigma", float)
    try:
        sigma = SteepnessInterval(lo, hi)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    try:
        with open(args.terrain, "r", encoding="utf-8") as fh:
            terrain = Terrain.from_csv(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read terrain file: {exc}") from exc
    except TerrainFormatError as exc:
        raise InputError(f"{args.terrain}: {exc}") from exc
    graph = build_terrain_graph(terrain, sigma, args.conn)
    try:
        result = plan(
            graph, (row, col), (grow, gcol), schema=args.schema, domain=args.domain,
            backend=args.backend,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    sys.stdout.write(format_plan_result(result, graph))
    return 0


def cmd_check(args) -> int:
    bundles = builtin_bundles()
    keys = args.instance or list(bundles)
    for key in keys:
        if key not in bundles:
            raise InputError(
                f"unknown instance {key!r}; known: {', '.join(bundles)}"
            )
    laws = args.law or list(LAWS)
    for law in laws:
        if law not in LAWS:
            raise InputError(f"unknown law {law!r}; known: {', '.join(LAWS)}")
    print(f"# law suite: seed={args.seed} max-path-len={args.max_path_len}")
    mismatches = 0
    rows = 0
    for key in keys:
        bundle = bundles[key]
        todo = [law for law in laws if law != "bridge" or bundle.finite]
        if not todo:
            continue
        reports = run_laws(bundle, todo, max_path_edges=args.max_path_len)
        for law in todo:
            rep = reports[law]
            status = "pass" if rep.passed else "fail"
            expected = bundle.expected[law]
            ok = status == expected
            rows += 1
            if not ok:
                mismatches += 1
            print(
                f"check instance={key} law={law} status={status} "
                f"expected={expected} ok={'yes' if ok else 'NO'} "
                f"checked={rep.checked} violations={rep.violations}"
            )
            if not rep.passed:
                for ce in rep.counterexamples[:3]:
                    print(
                        f"  ce detail={ce.detail!r} norphism={ce.norphism!r} "
                        f"lhs={ce.lhs!r} rhs={ce.rhs!r} morphisms={ce.morphisms!r}"
                    )
    if mismatches:
        print(f"result: MISMATCH ({mismatches} of {rows} laws deviated)")
        return 1
    print(f"result: all-expectations-met ({rows} laws)")
    return 0


def cmd_codesign_demo(args) -> int:
    data = market_example()
    d, n, nd = data["d"], data["n"], data["n_after_d"]
    print("# co-design market demo (finite grids: pears 0..20 kg, raisins 0..20 kg, CHF 0..60)")
    print("# d(r, q): can buy r kg raisins for q CHF           <=>  10*r <= q")
    print("# n(p, q): cannot buy p kg pears for q CHF          <=>  5*p > q")
    print("# (n * d)(p, r): p kg pears are unobtainable from r kg raisins")
    q = np_compose_right_witness(n, d, 10, 4)
    print(f"(n * d)(10, 4) = {nd(10, 4)}   witness CHF q = {q}")
    print()
    print("(n * d) table, pears p down, raisins r across (T = impossible):")
    raisins = list(range(0, 13))
    header = "  p\\r " + " ".join(f"{r:>2}" for r in raisins)
    print(header)
    for p in range(0, 13):
        row = " ".join(" T" if nd(p, r) else " ." for r in raisins)
        print(f"  {p:>3} " + row)
    print()
    nfl = no_free_lunch(data["chf"])
    ident = dp_identity(data["chf"])
    print(f"incompat(no_free_lunch(CHF), identity_dp(CHF)) = {incompat_dp(nfl, ident)}")
    rev1, rev2 = derived_nps(d)
    print("derived reverse impossibility results for d (CHF ~> raisins):")
    print("  via no-free-lunch on CHF:     50 CHF cannot come from 4 kg raisins ->",
          rev1(50, 4))
    print("  via no-free-lunch on raisins: 50 CHF cannot come from 4 kg raisins ->",
          rev2(50, 4))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nategory",
        description="negative-information categories: certified planning, law suites, co-design",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", help="plan a path with a certificate")
    p_plan.add_argument("--terrain", required=True, help="terrain CSV file")
    p_plan.add_argument("--start", required=True, help="start cell row,col")
    p_plan.add_argument("--goal", required=True, help="goal cell row,col")
    p_plan.add_argument("--sigma", default="-inf,inf", help="steepness window lo,hi")
    p_plan.add_argument("--conn", type=int, default=4, choices=(4, 8))
    p_plan.add_argument("--schema", default="euclid", choices=SCHEMAS)
    p_plan.add_argument("--domain", default="nonneg", choices=DOMAINS)
    p_plan.add_argument("--backend", default=None, choices=("numba", "numpy"))
    p_plan.set_defaults(fn=cmd_plan)

    p_check = sub.add_parser("check", help="run the law suite")
    p_check.add_argument("--instance", action="append", metavar="NAME")
    p_check.add_argument("--law", action="append", metavar="LAW")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--max-path-len", type=int, default=6, dest="max_path_len")
    p_check.set_defaults(fn=cmd_check)

    p_demo = sub.add_parser("codesign-demo", help="print the market example")
    p_demo.set_defaults(fn=cmd_codesign_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
