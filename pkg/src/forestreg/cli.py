"""Command-line front end: validate graphs, compute the regularity formula,
run the homology oracle, list edge-ideal generators, run verification suites.

Exit codes: 0 success / hypothesis accepted, 1 domain rejection or
verification failure, 2 usage, I/O or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .digraph import (
    GraphFormatError,
    HypothesisError,
    check_cm_hypothesis,
    parse_digraph,
    render_digraph,
)
from .monomial import edge_ideal, polarize
from .resolution import (
    DEFAULT_SUPPORT_CAP,
    OracleInfeasibleError,
    betti_table,
)
from .theta import theta, theta_piecewise
from . import verify as verify_mod


def _oracle_cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("REG_ORACLE_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise GraphFormatError(
                f"REG_ORACLE_CAP must be an integer, got {env!r}"
            ) from None
    return DEFAULT_SUPPORT_CAP


def _parse_field(text: str) -> Optional[int]:
    if text == "Q":
        return None
    if text.startswith("prime:"):
        p = int(text.split(":", 1)[1])
        if p < 2:
            raise ValueError("prime must be >= 2")
        return p
    raise ValueError(f"unknown field {text!r}; use Q or prime:<p>")


def _load_graph(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_digraph(handle.read())


def cmd_validate(args) -> int:
    graph = _load_graph(args.path)
    report = check_cm_hypothesis(graph)
    for note in graph.normalization_notes:
        print(f"note: {note}")
    if args.format == "json":
        payload = {
            "accepted": report.accepted,
            "is_forest": report.is_forest,
            "matching": (
                [list(p) for p in report.matching.pairs]
                if report.matching
                else None
            ),
            "all_matched_leaves_are_sinks": report.all_matched_leaves_are_sinks,
            "weight_condition_ok": report.weight_condition_ok,
            "violations": list(report.violations),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(report.summary())
    return 0 if report.accepted else 1


def cmd_reg(args) -> int:
    graph = _load_graph(args.path)
    report = check_cm_hypothesis(graph)
    if not report.accepted:
        print(report.summary(), file=sys.stderr)
        print(
            "the formula applies only to accepted forests; "
            "run `forestreg validate` for details",
            file=sys.stderr,
        )
        return 1
    k_values = [args.k] if args.k is not None else list(range(1, args.kmax + 1))
    cap = _oracle_cap(args)
    prime = _parse_field(args.field)
    rows = []
    ideal = edge_ideal(graph)
    for k in k_values:
        row = {"k": k, "theta": theta(k, graph)}
        if args.oracle:
            try:
                table = betti_table(ideal**k, cap=cap, prime=prime)
                row["oracle"] = table.regularity()
                row["match"] = row["oracle"] == row["theta"]
                for mismatch in table.prime_mismatches:
                    print(f"field mismatch: {mismatch}", file=sys.stderr)
            except OracleInfeasibleError as exc:
                row["oracle"] = None
                row["match"] = None
                row["skipped"] = str(exc)
        rows.append(row)
    piecewise = theta_piecewise(graph) if args.piecewise else None

    if args.format == "json":
        payload = {"rows": rows}
        if piecewise is not None:
            payload["piecewise"] = piecewise.to_json()
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        header = "k,theta" + (",oracle,match" if args.oracle else "")
        print(header)
        for row in rows:
            line = f"{row['k']},{row['theta']}"
            if args.oracle:
                oracle = row.get("oracle")
                match = row.get("match")
                line += (
                    f",{'' if oracle is None else oracle}"
                    f",{'' if match is None else str(match).lower()}"
                )
            print(line)
    else:
        header = f"{'k':>4} {'theta':>8}"
        if args.oracle:
            header += f" {'oracle':>8} {'match':>6}"
        print(header)
        for row in rows:
            line = f"{row['k']:>4} {row['theta']:>8}"
            if args.oracle:
                oracle = row.get("oracle")
                if oracle is None:
                    line += f" {'skip':>8} {'-':>6}"
                else:
                    line += (
                        f" {oracle:>8} "
                        f"{'yes' if row['match'] else 'NO':>6}"
                    )
            print(line)
        if any(row.get("skipped") for row in rows):
            for row in rows:
                if row.get("skipped"):
                    print(f"  k={row['k']} skipped: {row['skipped']}")
    if piecewise is not None and args.format != "json":
        lines = ", ".join(
            f"{slope}*(k-1)+{intercept}" for slope, intercept in piecewise.lines
        )
        print(f"lines: {lines}")
        print(
            "breakpoints: "
            + (", ".join(map(str, piecewise.breakpoints)) or "none")
        )
        spans = []
        for slope, intercept, k_from, k_to in piecewise.regimes():
            expr = f"{slope}*(k-1)+{intercept}"
            if k_to is None:
                spans.append(f"{expr} for k >= {k_from}")
            else:
                spans.append(f"{expr} for {k_from} <= k <= {k_to}")
        print("regimes: " + "; ".join(spans))
    if args.oracle and any(row.get("match") is False for row in rows):
        return 1
    return 0


def cmd_ideal(args) -> int:
    graph = _load_graph(args.path)
    ideal = edge_ideal(graph) ** args.power
    if args.polarize:
        ideal = polarize(ideal)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "variables": list(ideal.registry.names),
                    "generators": [g.render(ideal.registry) for g in ideal.gens],
                },
                indent=2,
            )
        )
    else:
        print(ideal.render())
    return 0


def cmd_verify(args) -> int:
    cap = _oracle_cap(args)
    if args.suite == "exhaustive":
        equivalence = verify_mod.run_exhaustive_suite(
            r_max=args.rmax, k_max=args.kmax, cap=cap
        )

        def identity_instances():
            for r in range(1, args.rmax + 1):
                yield from verify_mod.iter_shape_forests(r)

    else:
        equivalence = verify_mod.run_random_suite(
            count=args.count,
            seed=args.seed,
            r_max=args.rmax,
            k_max=args.kmax,
            cap=cap,
        )

        def identity_instances():
            for i in range(args.count):
                spec = verify_mod.ForestGenSpec(
                    pairs=(i % args.rmax) + 1,
                    seed=args.seed * 100003 + i,
                )
                yield verify_mod.random_cm_forest(spec)

    identities = verify_mod.run_lemma_suite(
        identity_instances(), k_max=args.kmax
    )
    print(equivalence.render())
    print(identities.render())
    if equivalence.passed and identities.passed:
        return 0
    failed = equivalence if not equivalence.passed else identities
    if failed.counterexample is not None:
        path = args.counterexample
        with open(path, "w", encoding="utf-8") as handle:
            handle.write("# verification counterexample; replay with "
                         "`forestreg reg <this file> --oracle`\n")
            handle.write(render_digraph(failed.counterexample))
        print(f"counterexample written to {path}", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forestreg",
        description=(
            "regularity of powers of edge ideals of weighted oriented "
            "forests whose leaves are sinks"
        ),
    )
    parser.add_argument(
        "--format",
        choices=("table", "csv", "json"),
        default="table",
        help="output format (default: table)",
    )
    parser.add_argument(
        "--cap",
        type=int,
        default=None,
        help="homology support cap (default %(default)s; env REG_ORACLE_CAP)",
    )
    parser.add_argument(
        "--field",
        default="Q",
        help="coefficients for homology: Q or prime:<p> (default Q)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser(
        "validate", help="check the Cohen-Macaulay forest hypothesis"
    )
    p_validate.add_argument("path")
    p_validate.set_defaults(func=cmd_validate)

    p_reg = sub.add_parser(
        "reg", help="evaluate the regularity formula (optionally vs oracle)"
    )
    p_reg.add_argument("path")
    group = p_reg.add_mutually_exclusive_group()
    group.add_argument("--k", type=int, default=None, help="single power k")
    group.add_argument(
        "--kmax", type=int, default=1, help="powers 1..kmax (default 1)"
    )
    p_reg.add_argument(
        "--oracle",
        action="store_true",
        help="also compute the homology oracle and compare",
    )
    p_reg.add_argument(
        "--piecewise",
        action="store_true",
        help="print the line set, breakpoints and regimes",
    )
    p_reg.set_defaults(func=cmd_reg)

    p_ideal = sub.add_parser("ideal", help="list minimal generators of I(D)^k")
    p_ideal.add_argument("path")
    p_ideal.add_argument(
        "--power", type=int, default=1, help="power k (default 1)"
    )
    p_ideal.add_argument(
        "--polarize", action="store_true", help="polarize the result"
    )
    p_ideal.set_defaults(func=cmd_ideal)

    p_verify = sub.add_parser(
        "verify",
        help="run the formula-vs-oracle and ideal-identity suites",
    )
    p_verify.add_argument(
        "--suite", choices=("exhaustive", "random"), default="exhaustive"
    )
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--rmax", type=int, default=3)
    p_verify.add_argument("--kmax", type=int, default=2)
    p_verify.add_argument(
        "--count", type=int, default=100, help="random suite instance count"
    )
    p_verify.add_argument(
        "--counterexample",
        default="forestreg-counterexample.graph",
        help="file for the first failing instance",
    )
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
