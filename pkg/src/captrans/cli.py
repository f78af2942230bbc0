"""Command-line interface.

Exit codes: 0 ok, 1 domain error, 2 parse error, 3 solver resource error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .cost import ground_absdiff, lift_equalized, lift_kappa, lift_tiered
from .errors import DomainError, ParseError, SolverError
from .lp import OPTIMAL, to_lp_text
from .setfun import is_additive, is_belief
from .transport import (
    bpa_lp,
    discrepancy,
    maxplus_lp,
    mobius_lp,
    transport,
    validate_plan,
)

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_SOLVER = 0, 1, 2, 3


def build_cost(spec: str, mu, nu, method: str):
    """Resolve a cost spec: absdiff+kappa[:k], tiered[:k:k+], equalized[:k],
    or a path to a cost JSON file."""
    head, _, rest = spec.partition(":")
    args = [a for a in rest.split(":") if a] if rest else []
    try:
        nums = [float(a) for a in args]
    except ValueError as exc:
        raise ParseError(f"bad number in cost spec {spec!r}") from exc
    if head in ("absdiff+kappa", "tiered", "equalized"):
        ground = ground_absdiff(mu.universe, nu.universe)
        if head == "absdiff+kappa":
            if len(nums) > 1:
                raise ParseError("absdiff+kappa takes at most one parameter")
            return lift_kappa(ground, *nums, bpa_mode=method in ("bpa", "mobius"))
        if head == "tiered":
            if len(nums) > 2:
                raise ParseError("tiered takes at most two parameters")
            return lift_tiered(ground, *nums)
        if len(nums) > 1:
            raise ParseError("equalized takes at most one parameter")
        return lift_equalized(ground, mu, nu, *nums)
    if not Path(spec).exists():
        raise ParseError(f"unknown cost spec {spec!r} (and no such file)")
    return io.load_cost(spec, mu.universe, nu.universe)


def cmd_transform(args) -> int:
    mu = io.load_measure(args.measure)
    sys.stdout.write(io.dumps(io.setvector_to_dict(io.transform(mu, args.kind), args.labels)))
    return EXIT_OK


def cmd_transport(args) -> int:
    mu, nu = io.load_measure(args.mu), io.load_measure(args.nu)
    cost = build_cost(args.cost, mu, nu, args.method)
    if args.lp_dump:
        builder = {"bpa": bpa_lp, "mobius": mobius_lp, "maxplus": maxplus_lp}[args.method]
        Path(args.lp_dump).write_text(to_lp_text(builder(mu, nu, cost)), encoding="utf-8")
    plan = transport(mu, nu, args.method, cost)
    if plan.status != OPTIMAL:
        print(f"error: solver finished with status {plan.status}", file=sys.stderr)
        return EXIT_SOLVER
    if args.format == "table":
        sys.stdout.write(io.format_table(plan, mu, nu))
    else:
        sys.stdout.write(io.dumps(io.plan_to_dict(plan, args.labels)))
    return EXIT_OK


def cmd_distance(args) -> int:
    mu, nu = io.load_measure(args.mu), io.load_measure(args.nu)
    d = discrepancy(mu, nu, build_cost(args.cost, mu, nu, "maxplus"))
    print(f"{io.number(d):.12g}")
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.plan:
        if not (args.mu and args.nu):
            raise ParseError("--plan needs --mu and --nu")
        mu, nu = io.load_measure(args.mu), io.load_measure(args.nu)
        plan = io.plan_from_dict(args.plan, mu.universe, nu.universe)
        rep = validate_plan(plan, mu, nu)
        sys.stdout.write(io.dumps({
            "valid": bool(rep.ok),
            "method": rep.method,
            "transform_violation": io.number(rep.transform_violation),
            "cumulative_violation": io.number(rep.cumulative_violation),
            "sign_violation": io.number(rep.sign_violation),
            "max_violation": io.number(rep.max_violation),
            "messages": list(rep.messages),
        }))
        return EXIT_OK if rep.ok else EXIT_DOMAIN
    if not args.measure:
        raise ParseError("validate needs --measure or --plan")
    mu = io.load_measure(args.measure)
    sys.stdout.write(io.dumps({
        "valid": True,
        "n": mu.n,
        "normalized": bool(mu.normalized),
        "belief": bool(is_belief(mu)),
        "additive": bool(is_additive(mu)),
    }))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="captrans", description="Optimal transport between capacities.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="Moebius or (max,+) transform of a measure")
    p.add_argument("--measure", required=True)
    p.add_argument("--kind", choices=("mobius", "maxplus"), required=True)
    p.add_argument("--labels", action="store_true", help="label subset keys instead of bitmasks")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("transport", help="optimal transport plan between two measures")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--method", choices=("bpa", "mobius", "maxplus"), required=True)
    p.add_argument("--cost", required=True,
                   help="absdiff+kappa[:k] | tiered[:k:k+] | equalized[:k] | cost.json")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--labels", action="store_true")
    p.add_argument("--lp-dump", metavar="PATH", help="write the LP in text form before solving")
    p.set_defaults(func=cmd_transport)

    p = sub.add_parser("distance", help="(max,+) transport discrepancy")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--cost", required=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("validate", help="check a measure file, or a plan file against two measures")
    p.add_argument("--measure")
    p.add_argument("--plan")
    p.add_argument("--mu")
    p.add_argument("--nu")
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
