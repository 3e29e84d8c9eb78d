"""Acceptance gate: nine criteria, one pass/fail line each (run with -s or -v).

Criteria 3-6 share one seeded 500-graph corpus (degree windows with the
spread Delta >= 2*delta, orders 8..16) built once per module; criterion 7
uses its own cubic corpus.  Every verdict is exact-rational or integer.
"""

from fractions import Fraction

import pytest

from pathpart import (
    assert_fixpoint_claims,
    build_layering,
    check_bound,
    conjecture_bound,
    counting_chain,
    cubic_bound,
    epsilon_sandwich,
    exact_mu,
    greedy_initial,
    has_hamiltonian_path,
    local_search,
    potential,
    stats,
    theorem_bound,
    validate_partition,
)
from pathpart.generators import (
    FIGURE1_LABELS,
    SplitMix64,
    bipartite_copies,
    clique_copies,
    figure1_fixture,
    random_bounded,
    random_cubic,
)
from pathpart.graph import degree_profile, is_two_connected

from conftest import backtracking_hamiltonian_path, brute_force_mu


def report(num: int, name: str, ok: bool, detail: str = "") -> None:
    verdict = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"\n[criterion {num}] {name}: {verdict}{suffix}")
    assert ok, f"criterion {num} ({name}) failed{suffix}"


class Record:
    def __init__(self, g):
        self.g = g
        prof = degree_profile(g)
        self.delta, self.Delta = prof.min_degree, prof.max_degree
        self.greedy = greedy_initial(g)
        self.fix, self.trace = local_search(g, self.greedy)
        self.layering = build_layering(g, self.fix)
        self.mu = exact_mu(g).mu


@pytest.fixture(scope="module")
def corpus():
    """>= 500 seeded graphs, 8 <= n <= 16, realized delta >= 2, Delta >= 2*delta."""
    windows = [(2, 4), (2, 5), (2, 6), (3, 6), (3, 7), (4, 8)]
    records = []
    for delta, Delta in windows:
        for n in range(8, 17):
            if Delta > n - 1:
                continue
            kept = 0
            for seed in range(60):
                if kept >= 12:
                    break
                g = random_bounded(n, delta, Delta, seed=seed)
                prof = degree_profile(g)
                if prof.min_degree < 2 or prof.max_degree < 2 * prof.min_degree:
                    continue
                records.append(Record(g))
                kept += 1
    assert len(records) >= 500, f"corpus has only {len(records)} graphs"
    return records


def test_criterion_1_tight_bipartite_family():
    checked = 0
    ok = True
    for delta in (2, 3):
        for Delta in range(delta + 2, 2 * delta + 3):
            for m in (1, 2):
                n = m * (delta + Delta)
                if n > 18:
                    continue
                g = bipartite_copies(delta, Delta, m)
                mu = exact_mu(g).mu
                formula = Fraction((Delta - delta) * n, Delta + delta)
                ok &= mu == m * (Delta - delta)
                ok &= Fraction(mu) == formula
                tb = theorem_bound(n, delta, Delta)
                if tb is not None:
                    ok &= tb == formula
                checked += 1
    report(1, "tight bipartite family", ok and checked >= 10, f"{checked} cases")


def test_criterion_2_tight_clique_family():
    checked = 0
    ok = True
    for delta in (2, 3, 4):
        for m in (1, 2, 3):
            n = m * (delta + 1)
            if n > 15:
                continue
            g = clique_copies(delta, m)
            mu = exact_mu(g).mu
            ok &= mu == m
            ok &= conjecture_bound(n, delta, delta) == Fraction(m)
            checked += 1
    report(2, "tight clique family", ok and checked == 9, f"{checked} cases")


def test_criterion_3_theorem_at_desk_scale(corpus):
    violations = [
        r
        for r in corpus
        if r.mu * (r.Delta + r.delta) > (r.Delta - r.delta) * r.g.n
    ]
    report(
        3,
        "theorem bound on random corpus",
        not violations,
        f"{len(corpus)} graphs, {len(violations)} violations",
    )


def test_criterion_4_heuristic_soundness(corpus):
    bad = 0
    for r in corpus:
        ok = validate_partition(r.g, r.fix).ok
        ok &= r.trace.fixpoint_reached and r.trace.iterations <= 10 * r.g.n
        ok &= r.mu <= len(r.fix.paths) <= len(r.greedy.paths)
        ok &= len(r.fix.paths) * (r.Delta + r.delta) <= (r.Delta - r.delta) * r.g.n
        pots = [potential(r.greedy)] + [s.after for s in r.trace.steps]
        ok &= all(b < a for a, b in zip(pots, pots[1:]))
        if not ok:
            bad += 1
    report(4, "heuristic soundness", bad == 0, f"{len(corpus)} fixpoints, {bad} bad")


def test_criterion_5_fixpoint_claims(corpus):
    bad = sum(
        1
        for r in corpus
        if not assert_fixpoint_claims(r.g, r.fix, r.layering).ok
    )
    # contrapositive coupling: five hand-built violating partitions each
    # admit a move (exercised in detail in test_moves.py)
    from test_moves import (
        test_adjacent_path_ends_admit_merge,
        test_central_detach_of_order4_path,
        test_end_to_end_chord_enables_rotation,
        test_pair_end_next_to_off_center_interior,
        test_singleton_next_to_long_path_interior,
    )

    coupling_ok = True
    for check in (
        test_adjacent_path_ends_admit_merge,
        test_singleton_next_to_long_path_interior,
        test_pair_end_next_to_off_center_interior,
        test_central_detach_of_order4_path,
        test_end_to_end_chord_enables_rotation,
    ):
        try:
            check()
        except AssertionError:
            coupling_ok = False
    report(
        5,
        "fixpoint claims + contrapositive coupling",
        bad == 0 and coupling_ok,
        f"{len(corpus)} fixpoints, {bad} claim failures",
    )


def test_criterion_6_counting_chain(corpus):
    # extend the corpus with bipartite extremes whose fixpoints keep
    # singleton paths, so the non-degenerate branch is also exercised
    extra = [Record(bipartite_copies(2, Delta, m)) for Delta in (5, 6) for m in (1, 2)]
    bad = 0
    n3_checked = main_checked = 0
    for r in corpus + extra:
        s = epsilon_sandwich(r.g, r.fix, r.layering)
        chain = counting_chain(r.g, r.fix, r.layering)
        ok = s.holds and chain.ok
        if chain.branch == "n3":
            n3_checked += 1
            ok &= len(r.fix.paths) * 3 <= r.g.n
        elif chain.branch == "main":
            main_checked += 1
        if not ok:
            bad += 1
    report(
        6,
        "counting chain",
        bad == 0 and main_checked > 0,
        f"{len(corpus) + len(extra)} fixpoints, {n3_checked} in the n/3 branch, "
        f"{main_checked} in the main branch, {bad} bad",
    )


def test_criterion_7_cubic_bounds():
    checked = 0
    violations = 0
    two_conn = 0
    for n in range(4, 17, 2):
        for seed in range(16):
            g = random_cubic(n, seed=seed)
            mu = exact_mu(g).mu
            if mu > cubic_bound(n):
                violations += 1
            if is_two_connected(g):
                two_conn += 1
                if mu > cubic_bound(n, two_connected=True):
                    violations += 1
            checked += 1
    report(
        7,
        "cubic bounds",
        checked >= 100 and violations == 0,
        f"{checked} graphs ({two_conn} two-connected), {violations} violations",
    )


def test_criterion_8_fixture():
    g, p = figure1_fixture()
    lab = FIGURE1_LABELS
    st = stats(g, p)
    l = build_layering(g, p)
    ok = {i: st.p(i) for i in range(1, 6)} == {1: 1, 2: 3, 3: 1, 4: 2, 5: 4}
    # the unique 3-path's center carries the first w label in the drawing
    ok &= st.centers3 == {lab["w1"]}
    ok &= st.centers5 == {lab[f"w{i}"] for i in range(5, 9)}
    ok &= l.w_layers[0] == {lab[f"w{i}"] for i in range(1, 6)}
    ok &= l.w_layers[1] == {lab["w6"], lab["w7"]}
    ok &= l.w_layers[2] == {lab["w8"]}
    ok &= len(l.w_layers) == 3
    report(8, "transcribed fixture", ok)


def test_criterion_9_oracle_self_check():
    rng = SplitMix64(2024)
    agree = 0
    for _ in range(50):
        n = 4 + rng.randrange(5)  # n in 4..8
        g = random_bounded(n, 1, 3, seed=rng.next_u64())
        if exact_mu(g).mu == brute_force_mu(g):
            agree += 1
    ham_ok = True
    for _ in range(20):
        n = 6 + rng.randrange(7)  # n in 6..12
        g = random_bounded(n, 1, 3, seed=rng.next_u64())
        if has_hamiltonian_path(g) != backtracking_hamiltonian_path(g):
            ham_ok = False
    report(
        9,
        "oracle self-check",
        agree == 50 and ham_ok,
        f"{agree}/50 brute-force agreements, hamiltonian cross-check "
        f"{'ok' if ham_ok else 'failed'}",
    )
