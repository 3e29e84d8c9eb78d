"""Corpus sweeps: per-instance verification, CSV output and summary figures.

A sweep runs the full pipeline on every instance of a manifest (generate,
greedy start, local search, exact oracle where feasible, bound and claim
checks) and aggregates pass/fail counts.  Results can be written as a
delimited CSV; optional matplotlib figures are rendered next to it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .bounds import check_bound, counting_chain, cubic_bound, epsilon_sandwich, frac_str
from .exact import exact_mu
from .generators import CorpusSpec, GenerationError, build
from .graph import degree_profile, is_two_connected
from .layering import build_layering
from .moves import assert_fixpoint_claims, local_search
from .partition import greedy_initial, potential, validate_partition

CSV_COLUMNS = [
    "key",
    "family",
    "n",
    "delta",
    "Delta",
    "seed",
    "greedy_paths",
    "fix_paths",
    "steps",
    "exact_mu",
    "theorem_bound",
    "theorem_verdict",
    "tight",
    "claims_ok",
    "counting_ok",
    "failures",
]


@dataclass
class SweepResult:
    spec: CorpusSpec
    n: int = 0
    delta: int = 0
    Delta: int = 0
    greedy_paths: int = 0
    fix_paths: int = 0
    steps: int = 0
    exact: Optional[int] = None
    theorem_bound: Optional[str] = None
    theorem_verdict: str = "not_applicable"
    tight: bool = False
    claims_ok: Optional[bool] = None
    counting_ok: Optional[bool] = None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def row(self) -> dict:
        return {
            "key": self.spec.key(),
            "family": self.spec.family,
            "n": self.n,
            "delta": self.delta,
            "Delta": self.Delta,
            "seed": self.spec.seed,
            "greedy_paths": self.greedy_paths,
            "fix_paths": self.fix_paths,
            "steps": self.steps,
            "exact_mu": "" if self.exact is None else self.exact,
            "theorem_bound": self.theorem_bound or "",
            "theorem_verdict": self.theorem_verdict,
            "tight": self.tight,
            "claims_ok": "" if self.claims_ok is None else self.claims_ok,
            "counting_ok": "" if self.counting_ok is None else self.counting_ok,
            "failures": ";".join(self.failures),
        }


def evaluate_instance(
    spec: CorpusSpec,
    exact_limit: int = 20,
    max_steps: Optional[int] = None,
) -> SweepResult:
    res = SweepResult(spec=spec)
    try:
        g = build(spec)
    except GenerationError as exc:
        res.failures.append(f"generate:{exc}")
        return res
    prof = degree_profile(g)
    res.n, res.delta, res.Delta = g.n, prof.min_degree, prof.max_degree

    p0 = greedy_initial(g)
    res.greedy_paths = len(p0.paths)
    p_fix, trace = local_search(g, p0, max_steps=max_steps)
    res.fix_paths = len(p_fix.paths)
    res.steps = trace.iterations

    if not validate_partition(g, p_fix).ok:
        res.failures.append("fixpoint_invalid")
    if not trace.fixpoint_reached:
        res.failures.append("no_fixpoint_within_budget")
    prev = potential(p0)
    for step in trace.steps:
        if not step.after < step.before or step.before != prev:
            res.failures.append("trace_not_decreasing")
            break
        prev = step.after
    if res.fix_paths > res.greedy_paths:
        res.failures.append("worse_than_greedy")

    size_for_bound = res.fix_paths
    if g.n <= exact_limit:
        res.exact = exact_mu(g, limit=exact_limit).mu
        size_for_bound = res.exact
        if res.fix_paths < res.exact:
            res.failures.append("below_exact")

    bound = check_bound(g, size_for_bound)
    res.theorem_bound = frac_str(bound.theorem_value)
    res.theorem_verdict = bound.verdict
    res.tight = bound.tight
    if bound.verdict == "fail":
        res.failures.append("theorem_bound")
    if bound.preconditions_met:
        fix_bound = check_bound(g, res.fix_paths)
        if fix_bound.verdict == "fail":
            res.failures.append("fixpoint_above_theorem_bound")

    l = build_layering(g, p_fix)
    if res.delta >= 2:
        claims = assert_fixpoint_claims(g, p_fix, l)
        res.claims_ok = claims.ok
        if not claims.ok:
            res.failures.append("claims")
    if bound.preconditions_met:
        sandwich = epsilon_sandwich(g, p_fix, l)
        chain = counting_chain(g, p_fix, l)
        res.counting_ok = sandwich.holds and chain.ok
        if not res.counting_ok:
            res.failures.append("counting_chain")

    if spec.family == "random_cubic":
        mu = res.exact if res.exact is not None else res.fix_paths
        if mu > cubic_bound(g.n):
            res.failures.append("cubic_bound")
        if is_two_connected(g) and mu > cubic_bound(g.n, two_connected=True):
            res.failures.append("cubic_bound_2conn")
    return res


def run_sweep(
    specs: Iterable[CorpusSpec],
    exact_limit: int = 20,
    max_steps: Optional[int] = None,
) -> list[SweepResult]:
    results = [
        evaluate_instance(spec, exact_limit=exact_limit, max_steps=max_steps)
        for spec in specs
    ]
    results.sort(key=lambda r: r.spec.key())
    return results


def parse_manifest(text: str) -> list[CorpusSpec]:
    """One instance family per line: ``family key=value ...``.

    Integer values may be ranges ``a..b`` (inclusive); ``seeds=a..b`` expands
    into one spec per seed.  ``#`` starts a comment.
    """
    specs: list[CorpusSpec] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        family = tokens[0]
        fixed: dict[str, int] = {}
        ranged: dict[str, range] = {}
        seeds: range = range(0, 1)
        for tok in tokens[1:]:
            if "=" not in tok:
                raise ValueError(f"manifest line {line_no}: bad token {tok!r}")
            key, val = tok.split("=", 1)
            if ".." in val:
                lo, hi = val.split("..", 1)
                r = range(int(lo), int(hi) + 1)
            else:
                r = range(int(val), int(val) + 1)
            if key in ("seed", "seeds"):
                seeds = r
            elif len(r) == 1:
                fixed[key] = r.start
            else:
                ranged[key] = r
        combos: list[dict[str, int]] = [dict(fixed)]
        for key, r in ranged.items():
            combos = [dict(c, **{key: v}) for c in combos for v in r]
        for combo in combos:
            for seed in seeds:
                specs.append(
                    CorpusSpec(
                        family=family,
                        parameters=tuple(sorted(combo.items())),
                        seed=seed,
                    )
                )
    return specs


def write_csv(results: Iterable[SweepResult], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for r in results:
            writer.writerow(r.row())


def render_figures(results: list[SweepResult], outdir: str) -> list[str]:
    """Summary figures next to the delimited output; returns the file paths."""
    import os

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(outdir, exist_ok=True)
    written: list[str] = []

    with_bound = [
        r
        for r in results
        if r.theorem_bound and (r.exact is not None or r.fix_paths)
    ]
    if with_bound:
        fig, ax = plt.subplots(figsize=(6, 4.5))
        xs = [r.n for r in with_bound]
        mus = [r.exact if r.exact is not None else r.fix_paths for r in with_bound]
        bounds = []
        for r in with_bound:
            num, den = r.theorem_bound.split("/")
            bounds.append(int(num) / int(den))
        ax.scatter(xs, mus, s=18, label="path partition size", zorder=3)
        ax.scatter(xs, bounds, s=18, marker="x", label="theorem bound", zorder=2)
        ax.set_xlabel("n")
        ax.set_ylabel("paths")
        ax.set_title("Partition size vs degree-ratio bound")
        ax.legend()
        fig.tight_layout()
        path = os.path.join(outdir, "bound_vs_mu.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    if results:
        fig, ax = plt.subplots(figsize=(6, 4.5))
        steps = [r.steps for r in results]
        ax.hist(steps, bins=max(5, min(30, max(steps) + 1 if steps else 5)))
        ax.set_xlabel("accepted local-search steps")
        ax.set_ylabel("instances")
        ax.set_title("Search effort across the corpus")
        fig.tight_layout()
        path = os.path.join(outdir, "search_steps.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written


def summarize(results: list[SweepResult]) -> dict:
    failures = [r for r in results if not r.ok]
    counts: dict[str, int] = {}
    for r in failures:
        for f in r.failures:
            name = f.split(":", 1)[0]
            counts[name] = counts.get(name, 0) + 1
    return {
        "instances": len(results),
        "passed": len(results) - len(failures),
        "failed": len(failures),
        "failure_counts": dict(sorted(counts.items())),
        "tight_instances": sum(1 for r in results if r.tight),
    }
