"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classic_game import (
    GameParams,
    check_classic_equilibrium,
    enumerate_classic_equilibria,
    social_cost,
    social_optimum_bruteforce,
)
from .costshare_game import (
    best_response_share,
    check_costshare_equilibrium,
    individual_cost_share,
    induced_inoculation_set,
    load_payments,
)
from .experiments import (
    DEFAULT_VERIFY_LIMIT,
    log_log_slope,
    run_scaling_experiment,
    write_rows_csv,
    write_rows_json,
)
from .graph import as_inoculation_set, load_graph


def _parse_members(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad node list {text!r}: {exc}") from exc


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _print_violations(report) -> None:
    for v in report.violations:
        print(f"  node {v.node}: {v.deviation} "
              f"(cost {v.current_cost:.6g} -> {v.deviating_cost:.6g})")


def _cmd_verify_classic(args) -> int:
    g = load_graph(args.graph)
    I = as_inoculation_set(g, _parse_members(args.members))
    params = GameParams(C=args.C, L=args.L)
    report = check_classic_equilibrium(params, g, I)
    print(f"social cost: {_fmt(social_cost(params, g, I))}")
    if report.is_equilibrium:
        print("equilibrium")
        return 0
    print("not an equilibrium")
    _print_violations(report)
    return 1


def _cmd_verify_costshare(args) -> int:
    g = load_graph(args.graph)
    A = load_payments(args.payments)
    params = GameParams(C=args.C, L=args.L)
    I = induced_inoculation_set(params, A)
    print(f"induced inoculation set ({len(I)} nodes): {sorted(I)}")
    print(f"social cost: {_fmt(social_cost(params, g, I))}")
    report = check_costshare_equilibrium(params, g, A, eps_eq=args.eps)
    if report.is_equilibrium:
        print("equilibrium")
        return 0
    print("not an equilibrium")
    _print_violations(report)
    return 1


def _cmd_best_response(args) -> int:
    g = load_graph(args.graph)
    A = load_payments(args.payments)
    params = GameParams(C=args.C, L=args.L)
    current = individual_cost_share(params, g, A, args.node)
    br = best_response_share(params, g, A, args.node)
    print(f"current cost: {_fmt(current)}")
    row = {j: _fmt(a) for j, a in br.payments.items()}
    print(f"best row: {row if row else '{} (pay nothing)'}")
    print(f"best cost: {_fmt(br.cost)}")
    return 0


def _cmd_enumerate(args) -> int:
    g = load_graph(args.graph)
    params = GameParams(C=args.C, L=args.L)
    equilibria = enumerate_classic_equilibria(params, g, limit=args.limit)
    print("members,social_cost")
    for members, cost in equilibria:
        print(f"\"{' '.join(str(v) for v in sorted(members))}\",{_fmt(cost)}")
    return 0


def _cmd_optimum(args) -> int:
    g = load_graph(args.graph)
    params = GameParams(C=args.C, L=args.L)
    members, cost = social_optimum_bruteforce(params, g, limit=args.limit)
    print(f"optimum set: {sorted(members)}")
    print(f"optimum cost: {_fmt(cost)}")
    return 0


def _cmd_cycle_experiment(args) -> int:
    sizes = _parse_members(args.sizes)
    if not sizes:
        raise ValueError("--sizes must list at least one cycle size")
    rows = run_scaling_experiment(L=args.L, C=args.C, sizes=sizes,
                                  verify_limit=args.verify_limit)
    if args.format == "csv":
        write_rows_csv(rows, args.out)
    else:
        write_rows_json(rows, args.out)
    for r in rows:
        print(f"n={r.n} classic_best={_fmt(r.classic_best_cost)} "
              f"costshare={_fmt(r.costshare_cost)} optimum={_fmt(r.social_optimum)} "
              f"ratio={_fmt(r.ratio)} verified={str(r.verified).lower()}")
    if len(rows) >= 2:
        print(f"log-log ratio slope: {_fmt(log_log_slope(rows))}")
    print(f"wrote {args.format} to {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inoculation",
        description="Inoculation games on graphs: verification, search, experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p) -> None:
        p.add_argument("--C", type=float, default=1.0, help="inoculation cost (default 1)")
        p.add_argument("--L", type=float, default=1.0, help="infection loss (default 1)")

    p = sub.add_parser("verify-classic", help="check a pure profile of the classic game")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("members", help="comma-separated inoculated nodes, e.g. 0,4,8 (empty for none)")
    add_params(p)
    p.set_defaults(func=_cmd_verify_classic)

    p = sub.add_parser("verify-costshare", help="check a payment matrix for equilibrium")
    p.add_argument("graph")
    p.add_argument("payments", help="payments JSON file")
    add_params(p)
    p.add_argument("--eps", type=float, default=1e-9, help="deviation tolerance (ties allowed)")
    p.set_defaults(func=_cmd_verify_costshare)

    p = sub.add_parser("best-response", help="best replacement payment row for one node")
    p.add_argument("graph")
    p.add_argument("payments")
    p.add_argument("--node", type=int, required=True)
    add_params(p)
    p.set_defaults(func=_cmd_best_response)

    p = sub.add_parser("enumerate", help="list all pure classic equilibria (small graphs)")
    p.add_argument("graph")
    add_params(p)
    p.add_argument("--limit", type=int, default=20, help="enumeration size cap")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("optimum", help="brute-force social optimum (small graphs)")
    p.add_argument("graph")
    add_params(p)
    p.add_argument("--limit", type=int, default=20)
    p.set_defaults(func=_cmd_optimum)

    p = sub.add_parser("cycle-experiment", help="scaling study of the cycle constructions")
    p.add_argument("--L", type=float, default=1.0)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--sizes", required=True, help="comma-separated cycle sizes, e.g. 64,256,1024")
    p.add_argument("--out", default="results.csv", help="output file path")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=0,
                   help="reserved for sampled runs; the cycle study is deterministic")
    p.add_argument("--verify-limit", type=int, default=DEFAULT_VERIFY_LIMIT,
                   help="verify equilibria up to this n")
    p.set_defaults(func=_cmd_cycle_experiment)
    return parser


def cli_dispatch(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints its own usage diagnostics
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))
