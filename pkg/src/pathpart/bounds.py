"""Exact-rational evaluation of the degree-ratio bounds and counting chain.

All comparisons use fractions.Fraction (or integer cross-multiplication);
no floating point enters any verdict.  Rationals serialize to JSON as
"numerator/denominator" strings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .graph import Graph, degree_profile, external_edge_count
from .layering import Layering
from .partition import PathPartition, stats

Rational = Fraction


def frac_str(x: Optional[Fraction]) -> Optional[str]:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}"


def theorem_bound(n: int, delta: int, Delta: int) -> Optional[Fraction]:
    """(Delta-delta)*n/(Delta+delta); None when delta < 2 or Delta < 2*delta."""
    if delta < 2 or Delta < 2 * delta:
        return None
    return Fraction((Delta - delta) * n, Delta + delta)


def conjecture_bound(n: int, delta: int, Delta: int) -> Fraction:
    """max{n/(delta+1), (Delta-delta)*n/(Delta+delta)} as an exact rational."""
    if delta < 0 or Delta < delta:
        raise ValueError("need 0 <= delta <= Delta")
    regular_term = Fraction(n, delta + 1)
    if Delta + delta == 0:
        return regular_term
    spread_term = Fraction((Delta - delta) * n, Delta + delta)
    return max(regular_term, spread_term)


def cubic_bound(n: int, two_connected: bool = False) -> int:
    """ceil(n/9) for connected cubic graphs, ceil(n/10) when 2-connected."""
    if n < 4:
        raise ValueError("cubic graphs need n >= 4")
    return math.ceil(n / 10) if two_connected else math.ceil(n / 9)


@dataclass
class BoundReport:
    n: int
    delta: int
    Delta: int
    k: Fraction
    theorem_value: Optional[Fraction]
    conjecture_value: Fraction
    preconditions_met: bool
    partition_size: int
    verdict: str                 # "pass" | "fail" | "not_applicable"
    tight: bool = False
    conjecture_verdict: str = "pass"   # empirical when preconditions unmet

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "delta": self.delta,
            "Delta": self.Delta,
            "k": frac_str(self.k),
            "theorem_value": frac_str(self.theorem_value),
            "conjecture_value": frac_str(self.conjecture_value),
            "preconditions_met": self.preconditions_met,
            "partition_size": self.partition_size,
            "verdict": self.verdict,
            "tight": self.tight,
            "conjecture_verdict": self.conjecture_verdict,
        }


def check_bound(g: Graph, mu_or_partition: Union[int, PathPartition]) -> BoundReport:
    """Compare a path count against the theorem and conjectured bounds."""
    if isinstance(mu_or_partition, PathPartition):
        size = len(mu_or_partition.paths)
    else:
        size = int(mu_or_partition)
    prof = degree_profile(g)
    delta, Delta = prof.min_degree, prof.max_degree
    n = g.n
    k = Fraction(Delta, delta) if delta else Fraction(0)
    tb = theorem_bound(n, delta, Delta)
    cb = conjecture_bound(n, delta, Delta)
    pre = tb is not None
    if not pre:
        verdict = "not_applicable"
        tight = False
    else:
        # integer cross-multiplication: size*(Delta+delta) <= (Delta-delta)*n
        ok = size * (Delta + delta) <= (Delta - delta) * n
        verdict = "pass" if ok else "fail"
        tight = size * (Delta + delta) == (Delta - delta) * n
    conj_ok = size <= cb
    return BoundReport(
        n=n,
        delta=delta,
        Delta=Delta,
        k=k,
        theorem_value=tb,
        conjecture_value=cb,
        preconditions_met=pre,
        partition_size=size,
        verdict=verdict,
        tight=tight,
        conjecture_verdict="pass" if conj_ok else "fail",
    )


@dataclass
class EpsilonSandwich:
    lower: int
    upper: int
    actual: int
    fixpoint_flagged: bool = True

    @property
    def holds(self) -> bool:
        return self.lower <= self.actual <= self.upper


def epsilon_sandwich(g: Graph, p_fix: PathPartition, l: Layering) -> EpsilonSandwich:
    """Edge count between X and W against its two closed-form bounds.

    The lower bound sums per-end degree guarantees over the paths with both
    ends in X; the upper bound sums per-W-vertex capacities by host order.
    """
    prof = degree_profile(g)
    Delta = prof.max_degree
    st = stats(g, p_fix, path_subset=l.prime_paths, layering=l)
    actual = external_edge_count(g, l.x_union, l.w_union)
    p4_one = st.p4_one_w or 0
    p4_two = st.p4_two_w or 0
    upper = (
        st.p(3) * Delta
        + p4_one * (Delta - 1)
        + 4 * p4_two
        + st.p(5) * (Delta - 2)
    )
    lower = 0
    for pi in sorted(l.prime_paths):
        path = p_fix.paths[pi]
        order = len(path)
        a, b = path[0], path[-1]
        if order == 1:
            lower += g.degree(a)
        elif order == 2:
            lower += (g.degree(a) - 1) + (g.degree(b) - 1)
        elif order == 3:
            lower += g.degree(a) + g.degree(b)
        elif order == 4:
            w_count = sum(1 for v in path if v in l.w_union)
            if w_count >= 2:
                lower += g.degree(a) + g.degree(b)
            else:
                lower += g.degree(a) + g.degree(b) - 1
        elif order == 5:
            lower += (g.degree(a) - 1) + (g.degree(b) - 1)
    return EpsilonSandwich(lower=lower, upper=upper, actual=actual)


@dataclass
class CountingReport:
    branch: str                       # "main" | "n3" | "degenerate"
    k: Fraction
    r: Optional[Fraction]
    n1: int
    n2: int
    p: int
    epsilon_lower: int
    epsilon_upper: int
    epsilon_actual: int
    claim4_ok: bool
    claim5_ok: bool
    p_bound_ok: bool
    final_ok: bool
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.claim4_ok and self.claim5_ok and self.p_bound_ok and self.final_ok

    def to_dict(self) -> dict:
        return {
            "branch": self.branch,
            "k": frac_str(self.k),
            "r": frac_str(self.r),
            "n1": self.n1,
            "n2": self.n2,
            "p": self.p,
            "epsilon_lower": self.epsilon_lower,
            "epsilon_upper": self.epsilon_upper,
            "epsilon_actual": self.epsilon_actual,
            "claim4_ok": self.claim4_ok,
            "claim5_ok": self.claim5_ok,
            "p_bound_ok": self.p_bound_ok,
            "final_ok": self.final_ok,
            "ok": self.ok,
            "details": list(self.details),
        }


def counting_chain(g: Graph, p_fix: PathPartition, l: Layering) -> CountingReport:
    """Replay the counting argument on a fixpoint with exact rationals."""
    prof = degree_profile(g)
    delta, Delta = prof.min_degree, prof.max_degree
    if delta < 2 or Delta < 2 * delta:
        raise ValueError("counting chain needs delta >= 2 and Delta >= 2*delta")
    n = g.n
    k = Fraction(Delta, delta)
    final_bound = (k - 1) / (k + 1) * n
    details: list[str] = []

    full = stats(g, p_fix)
    total_paths = len(p_fix.paths)
    if full.p(1) + full.p(2) == 0:
        # every path has order >= 3
        ok = total_paths * 3 <= n
        if not ok:
            details.append("n/3 branch violated: some path has order < 3")
        final_ok = ok and Fraction(total_paths) <= final_bound
        return CountingReport(
            branch="n3",
            k=k,
            r=None,
            n1=0,
            n2=n,
            p=0,
            epsilon_lower=0,
            epsilon_upper=0,
            epsilon_actual=0,
            claim4_ok=True,
            claim5_ok=True,
            p_bound_ok=ok,
            final_ok=final_ok,
            details=details,
        )

    st = stats(g, p_fix, path_subset=l.prime_paths, layering=l)
    sandwich = epsilon_sandwich(g, p_fix, l)
    p1, p2 = st.p(1), st.p(2)
    p345 = st.p(3) + st.p(4) + st.p(5)
    p = sum(st.order_counts.values())
    n1 = sum(i * c for i, c in st.order_counts.items())
    n2 = n - n1

    claim4_ok = sandwich.lower <= sandwich.actual
    if not claim4_ok:
        details.append(
            f"lower bound {sandwich.lower} exceeds actual eps(X,W)={sandwich.actual}"
        )
    upper_ok = sandwich.actual <= sandwich.upper
    if not upper_ok:
        details.append(
            f"actual eps(X,W)={sandwich.actual} exceeds upper bound {sandwich.upper}"
        )

    if p345 == 0:
        # forced degenerate case: the short paths must be absent too
        r = None
        branch = "degenerate"
        claim5_ok = upper_ok and p1 == 0 and p2 == 0
        if p1 or p2:
            details.append(
                f"degenerate case with p1={p1}, p2={p2}: balance equation has no r"
            )
    else:
        branch = "main"
        r = (Fraction(p1) + 2 * p2 - Fraction(2, delta) * p2) / p345
        claim5_ok = upper_ok and r <= k - 2
        if r > k - 2:
            details.append(f"r={r} exceeds k-2={k - 2}")

    p_bound_ok = Fraction(p) <= (k - 1) / (k + 1) * n1
    if not p_bound_ok:
        details.append(f"p={p} exceeds (k-1)/(k+1)*n1={(k - 1) / (k + 1) * n1}")
    outside_ok = all(
        len(path) >= 3
        for pi, path in enumerate(p_fix.paths)
        if pi not in l.prime_paths
    )
    if not outside_ok:
        details.append("a path outside P' has order < 3")
        p_bound_ok = False
    final_ok = Fraction(total_paths) <= final_bound
    if not final_ok:
        details.append(f"|P|={total_paths} exceeds (k-1)/(k+1)*n={final_bound}")
    return CountingReport(
        branch=branch,
        k=k,
        r=r,
        n1=n1,
        n2=n2,
        p=p,
        epsilon_lower=sandwich.lower,
        epsilon_upper=sandwich.upper,
        epsilon_actual=sandwich.actual,
        claim4_ok=claim4_ok,
        claim5_ok=claim5_ok,
        p_bound_ok=p_bound_ok,
        final_ok=final_ok,
        details=details,
    )
