"""Command-line interface.

Subcommands: exact, solve, verify, layer, trace, generate, sweep.

Exit codes: 0 success, 1 a verification check failed, 2 bad input or usage,
3 infeasible generator parameters, 4 instance too large for the exact oracle.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import check_bound, counting_chain, epsilon_sandwich
from .exact import DEFAULT_LIMIT, ExactLimitError, exact_mu
from .generators import FAMILIES, CorpusSpec, GenerationError, build
from .graph import GraphError, degree_profile, load_graph, serialize_edge_list
from .layering import build_layering, layering_to_dict
from .moves import assert_fixpoint_claims, local_search
from .partition import (
    PartitionError,
    PathPartition,
    greedy_initial,
    parse_partition,
    potential,
    serialize_partition,
    validate_partition,
)
from .report import parse_manifest, render_figures, run_sweep, summarize, write_csv

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_TOO_LARGE = 4


class _CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _emit(payload: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _load_partition(path: str, n: int) -> PathPartition:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        return parse_partition(text, n)
    except OSError as exc:
        raise _CliError(str(exc)) from exc


def cmd_exact(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    try:
        res = exact_mu(g, limit=args.limit)
    except ExactLimitError as exc:
        raise _CliError(str(exc), EXIT_TOO_LARGE) from exc
    lines = [f"n={g.n} m={g.edge_count}", f"mu={res.mu}"]
    payload = {"n": g.n, "m": g.edge_count, "mu": res.mu}
    if args.witness:
        payload["witness"] = [list(p) for p in res.witness.paths]
        lines.append(serialize_partition(res.witness).rstrip("\n"))
    _emit(payload, args.json, lines)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    p0 = greedy_initial(g)
    p, trace = local_search(g, p0, max_steps=args.max_steps)
    pot = potential(p)
    claims = assert_fixpoint_claims(g, p, build_layering(g, p))
    payload = {
        "n": g.n,
        "greedy_paths": len(p0.paths),
        "paths": len(p.paths),
        "potential": list(pot),
        "steps": trace.iterations,
        "fixpoint": trace.fixpoint_reached,
        "claims": claims.to_dict(),
        "partition": [list(q) for q in p.paths],
    }
    lines = [
        f"greedy_paths={len(p0.paths)} paths={len(p.paths)} "
        f"potential={tuple(pot)} steps={trace.iterations} "
        f"fixpoint={trace.fixpoint_reached} claims={'ok' if claims.ok else 'FAIL'}",
        serialize_partition(p).rstrip("\n"),
    ]
    _emit(payload, args.json, lines)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    prof = degree_profile(g)
    checks: dict[str, bool] = {}
    payload: dict = {"n": g.n, "delta": prof.min_degree, "Delta": prof.max_degree}

    if args.partition:
        p = _load_partition(args.partition, g.n)
        report = validate_partition(g, p)
        checks["partition_valid"] = report.ok
        payload["validation_problems"] = report.problems
        if not report.ok:
            _finish_verify(args, payload, checks)
            return EXIT_CHECK_FAILED
    else:
        p, trace = local_search(g, greedy_initial(g), max_steps=args.max_steps)
        checks["fixpoint_reached"] = trace.fixpoint_reached
        payload["steps"] = trace.iterations
    payload["paths"] = len(p.paths)

    size = len(p.paths)
    if g.n <= args.exact_limit:
        mu = exact_mu(g, limit=args.exact_limit).mu
        payload["exact_mu"] = mu
        checks["matches_exact"] = size == mu
        size = mu

    bound = check_bound(g, size)
    payload["bound"] = bound.to_dict()
    if bound.preconditions_met:
        checks["theorem_bound"] = bound.verdict == "pass"
    checks["conjecture_bound"] = bound.conjecture_verdict == "pass"

    l = build_layering(g, p)
    if prof.min_degree >= 2:
        claims = assert_fixpoint_claims(g, p, l)
        payload["claims"] = claims.to_dict()
        checks["fixpoint_claims"] = claims.ok
    if bound.preconditions_met:
        sandwich = epsilon_sandwich(g, p, l)
        chain = counting_chain(g, p, l)
        payload["epsilon"] = {
            "lower": sandwich.lower,
            "actual": sandwich.actual,
            "upper": sandwich.upper,
        }
        payload["counting"] = chain.to_dict()
        checks["epsilon_sandwich"] = sandwich.holds
        checks["counting_chain"] = chain.ok

    return _finish_verify(args, payload, checks)


def _finish_verify(args: argparse.Namespace, payload: dict, checks: dict) -> int:
    payload["checks"] = checks
    payload["ok"] = all(checks.values())
    lines = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in checks.items()]
    if payload.get("bound", {}).get("tight"):
        lines.append("tight: the bound is met with equality")
    lines.append("ok" if payload["ok"] else "FAILED")
    _emit(payload, args.json, lines)
    return EXIT_OK if payload["ok"] else EXIT_CHECK_FAILED


def cmd_layer(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    if args.partition:
        p = _load_partition(args.partition, g.n)
        report = validate_partition(g, p)
        if not report.ok:
            raise _CliError(f"invalid partition: {report.problems[0]}")
    else:
        p, _ = local_search(g, greedy_initial(g))
    l = build_layering(g, p)
    payload = layering_to_dict(g, p, l)
    lines = []
    for t, (xs, ws) in enumerate(zip(payload["x_layers"], payload["w_layers"]), 1):
        lines.append(f"X_{t}: {' '.join(map(str, xs))}")
        lines.append(f"W_{t}: {' '.join(map(str, ws))}")
    for t in range(len(payload["w_layers"]) + 1, len(payload["x_layers"]) + 1):
        lines.append(f"X_{t}: {' '.join(map(str, payload['x_layers'][t - 1]))}")
    lines.append(f"good_order: {' '.join(map(str, payload['good_order']))}")
    lines.append(f"bad_order: {' '.join(map(str, payload['bad_order']))}")
    lines.append(f"prime_paths: {' '.join(map(str, payload['prime_paths']))}")
    _emit(payload, args.json, lines)
    return EXIT_OK


def cmd_trace(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    p0 = greedy_initial(g)
    p, trace = local_search(g, p0, max_steps=args.max_steps)
    if args.json:
        # JSON lines: one record per accepted move, then a summary record
        for s in trace.steps:
            print(
                json.dumps(
                    {
                        "type": "step",
                        "move": s.rewrite.to_dict(),
                        "before": list(s.before),
                        "after": list(s.after),
                    }
                )
            )
        print(
            json.dumps(
                {
                    "type": "result",
                    "greedy_paths": len(p0.paths),
                    "paths": len(p.paths),
                    "steps": trace.iterations,
                    "fixpoint": trace.fixpoint_reached,
                }
            )
        )
        return EXIT_OK
    lines = [f"greedy_paths={len(p0.paths)}"]
    for i, s in enumerate(trace.steps, 1):
        lines.append(
            f"{i}. {s.rewrite.kind}: -{list(s.rewrite.edges_removed)} "
            f"+{list(s.rewrite.edges_added)}  {tuple(s.before)} -> {tuple(s.after)}"
        )
    lines.append(f"paths={len(p.paths)} fixpoint={trace.fixpoint_reached}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    params = {}
    for tok in args.params:
        if "=" not in tok:
            raise _CliError(f"expected key=value, got {tok!r}")
        key, val = tok.split("=", 1)
        try:
            params[key] = int(val)
        except ValueError:
            raise _CliError(f"non-integer value in {tok!r}") from None
    spec = CorpusSpec(
        family=args.family, parameters=tuple(sorted(params.items())), seed=args.seed
    )
    try:
        g = build(spec)
    except GenerationError as exc:
        raise _CliError(str(exc), EXIT_INFEASIBLE) from exc
    except KeyError as exc:
        raise _CliError(f"missing parameter {exc} for family {args.family}") from exc
    text = serialize_edge_list(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        with open(args.manifest, "r", encoding="utf-8") as fh:
            specs = parse_manifest(fh.read())
    except (OSError, ValueError) as exc:
        raise _CliError(str(exc)) from exc
    if not specs:
        raise _CliError("manifest contains no instances")
    results = run_sweep(specs, exact_limit=args.exact_limit, max_steps=args.max_steps)
    write_csv(results, args.output)
    figures: list[str] = []
    if args.plot_dir:
        figures = render_figures(results, args.plot_dir)
    summary = summarize(results)
    summary["csv"] = args.output
    summary["figures"] = figures
    lines = [
        f"instances={summary['instances']} passed={summary['passed']} "
        f"failed={summary['failed']} tight={summary['tight_instances']}",
        f"csv: {args.output}",
    ]
    lines.extend(f"figure: {f}" for f in figures)
    for name, count in summary["failure_counts"].items():
        lines.append(f"failure {name}: {count}")
    _emit(summary, args.json, lines)
    return EXIT_OK if summary["failed"] == 0 else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathpart",
        description="Path partitions: exact oracle, local search, bound checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph(p):
        p.add_argument("graph", help="graph file (edge list or DIMACS), '-' for stdin")

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("exact", help="minimum path-partition size by subset DP")
    add_graph(p)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="max n for the DP")
    p.add_argument("--witness", action="store_true", help="print an optimal partition")
    add_json(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("solve", help="greedy start plus local-search descent")
    add_graph(p)
    p.add_argument("--max-steps", type=int, default=None)
    add_json(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="bound, claim and counting checks")
    add_graph(p)
    p.add_argument("--partition", help="partition file to validate (default: solve)")
    p.add_argument("--exact-limit", type=int, default=DEFAULT_LIMIT)
    p.add_argument("--max-steps", type=int, default=None)
    add_json(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("layer", help="X/W layer structure of a partition")
    add_graph(p)
    p.add_argument("--partition", help="partition file (default: solve first)")
    add_json(p)
    p.set_defaults(func=cmd_layer)

    p = sub.add_parser("trace", help="local-search move trace")
    add_graph(p)
    p.add_argument("--max-steps", type=int, default=None)
    add_json(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("generate", help="emit a graph from a named family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="*", help="key=value parameters (e.g. n=12 delta=2)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="write edge list to a file")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sweep", help="run a manifest of instances; CSV plus figures")
    p.add_argument("manifest", help="manifest file: 'family key=value ...' per line")
    p.add_argument("-o", "--output", required=True, help="CSV output path")
    p.add_argument("--plot-dir", help="directory for summary figures")
    p.add_argument("--exact-limit", type=int, default=DEFAULT_LIMIT)
    p.add_argument("--max-steps", type=int, default=None)
    add_json(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (GraphError, PartitionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
