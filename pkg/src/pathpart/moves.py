"""Rewrite moves distilled from the minimality arguments, plus local search.

Every move is an edge exchange on the partition's edge set.  A candidate is
kept only if the rewritten partition is valid and its potential
(|paths|, p1, p2) is lexicographically smaller, so the search terminates and
each structural property of a fixpoint holds by contrapositive: a violating
configuration would admit one of the constructed moves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graph import Graph, external_edge_count
from .layering import (
    Layering,
    LayeringError,
    alpha_sequence,
    build_layering,
)
from .layering import derive_rewired
from .partition import (
    Edge,
    PartitionError,
    PathPartition,
    Potential,
    norm_edge,
    partition_from_edges,
    potential,
    stats,
    validate_partition,
)

MOVE_KINDS = (
    "MergeEnds",
    "AbsorbSingleton",
    "AbsorbPairEnd",
    "ChainRewire",
    "TripleMerge",
    "QuadDetach",
)
_KIND_INDEX = {k: i for i, k in enumerate(MOVE_KINDS)}


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class Rewrite:
    kind: str
    edges_removed: tuple[Edge, ...]
    edges_added: tuple[Edge, ...]
    paths_touched: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "edges_removed": [list(e) for e in self.edges_removed],
            "edges_added": [list(e) for e in self.edges_added],
            "paths_touched": list(self.paths_touched),
        }


@dataclass
class SearchStep:
    rewrite: Rewrite
    before: Potential
    after: Potential


@dataclass
class SearchTrace:
    steps: list[SearchStep] = field(default_factory=list)
    iterations: int = 0
    fixpoint_reached: bool = False


def _rebuild(
    g: Graph,
    base_edges: set[Edge],
    removed: Iterable[Edge],
    added: Iterable[Edge],
) -> Optional[PathPartition]:
    removed = set(removed)
    added = set(added)
    if not removed <= base_edges:
        return None
    if added & base_edges:
        return None
    for u, v in added:
        if not g.has_edge(u, v):
            return None
    try:
        return partition_from_edges(g, (base_edges - removed) | added)
    except PartitionError:
        return None


class _Collector:
    def __init__(self, g: Graph, p: PathPartition):
        self.g = g
        self.p = p
        self.base_edges = p.path_edges()
        self.pot0 = potential(p)
        self.seen: set[tuple[frozenset, frozenset]] = set()
        self.out: list[Rewrite] = []

    def offer(
        self,
        kind: str,
        removed: Iterable[Edge],
        added: Iterable[Edge],
        result: Optional[PathPartition] = None,
    ) -> None:
        removed = tuple(sorted(norm_edge(*e) for e in removed))
        added = tuple(sorted(norm_edge(*e) for e in added))
        sig = (frozenset(removed), frozenset(added))
        if sig in self.seen:
            return
        if result is None:
            result = _rebuild(self.g, self.base_edges, removed, added)
            if result is None:
                return
        if not potential(result) < self.pot0:
            return
        touched = sorted(
            {self.p.path_of(v) for e in removed + added for v in e}
        )
        self.seen.add(sig)
        self.out.append(Rewrite(kind, removed, added, tuple(touched)))


def _merge_ends(c: _Collector) -> None:
    p = c.p
    end_path = {}
    for pi in range(len(p.paths)):
        a, b = p.ends(pi)
        end_path[a] = pi
        end_path[b] = pi
    for u, v in c.g.edges():
        if u in end_path and v in end_path and end_path[u] != end_path[v]:
            c.offer("MergeEnds", (), [(u, v)])


def _absorb(c: _Collector, kind: str, sources: Iterable[int]) -> None:
    p = c.p
    for v in sorted(sources):
        own = p.path_of(v)
        for w in sorted(c.g.adj[v]):
            pi, pos = p.vertex_to_path[w]
            if pi == own:
                continue
            path = p.paths[pi]
            if pos == 0 or pos == len(path) - 1:
                continue  # end-adjacency is MergeEnds territory
            pred, succ = path[pos - 1], path[pos + 1]
            c.offer(kind, [(pred, w)], [(v, w)])
            c.offer(kind, [(w, succ)], [(v, w)])


def _chain_rewires(c: _Collector, l: Layering) -> None:
    g, p = c.g, c.p
    for w in sorted(l.w_union):
        try:
            seq = alpha_sequence(g, p, l, w)
        except LayeringError:
            continue
        host_ends = p.ends(seq.host_path)
        if seq.host_path in seq.terminal_of:
            terminals = [seq.terminal_of[seq.host_path]]
        else:
            terminals = sorted(set(host_ends))
        for term in terminals:
            for variant in ("P1", "P2"):
                try:
                    res = derive_rewired(g, p, seq, variant, terminal_end=term)
                except (LayeringError, PartitionError):
                    continue
                new_edges = res.path_edges()
                removed = c.base_edges - new_edges
                added = new_edges - c.base_edges
                c.offer("ChainRewire", removed, added, result=res)


def _split_reattach(c: _Collector) -> None:
    """Remove one path edge, add two edges that strictly merge paths.

    Covers the three-path merge around a bad-order vertex, the detachment of
    an order-4 path carrying two reachable interior vertices (including its
    same-path variant), and rotations through an edge joining the two ends
    of one path.
    """
    g, p = c.g, c.p
    path_edge_set = c.base_edges
    all_ends = sorted({e for pi in range(len(p.paths)) for e in p.ends(pi)})
    for ri, path in enumerate(p.paths):
        if len(path) < 2:
            continue
        e1, e2 = path[0], path[-1]
        chord: Optional[Edge] = None
        if len(path) >= 3 and g.has_edge(e1, e2):
            chord = norm_edge(e1, e2)
        mid4 = len(path) == 4
        for k, (u, v) in enumerate(zip(path, path[1:])):
            removed = norm_edge(u, v)

            def attaches(vertex: int) -> list[Edge]:
                out = []
                for x in all_ends:
                    if x == u or x == v:
                        continue
                    if not g.has_edge(x, vertex):
                        continue
                    e = norm_edge(x, vertex)
                    if e in path_edge_set:
                        continue
                    out.append(e)
                return out

            a_u = attaches(u)
            a_v = attaches(v)
            central = mid4 and k == 1
            for ea in a_u:
                for eb in a_v:
                    if ea == eb:
                        continue
                    kind = "QuadDetach" if central else "TripleMerge"
                    c.offer(kind, [removed], [ea, eb])
            if chord is not None and chord != removed:
                for ea in a_u + a_v:
                    if ea == chord:
                        continue
                    c.offer("QuadDetach", [removed], [chord, ea])


def enumerate_moves(g: Graph, p: PathPartition, l: Layering) -> list[Rewrite]:
    """All applicable potential-decreasing rewrites, deterministically ordered."""
    c = _Collector(g, p)
    st = stats(g, p)
    _merge_ends(c)
    _absorb(c, "AbsorbSingleton", st.singletons)
    _absorb(c, "AbsorbPairEnd", st.pair_ends)
    _chain_rewires(c, l)
    _split_reattach(c)
    c.out.sort(
        key=lambda m: (
            _KIND_INDEX[m.kind],
            m.paths_touched,
            m.edges_removed,
            m.edges_added,
        )
    )
    return c.out


def apply_move(g: Graph, p: PathPartition, m: Rewrite) -> PathPartition:
    result = _rebuild(g, p.path_edges(), m.edges_removed, m.edges_added)
    if result is None:
        raise MoveError(f"move {m.kind} is no longer applicable")
    if not potential(result) < potential(p):
        raise MoveError(f"move {m.kind} does not decrease the potential")
    return result


def local_search(
    g: Graph, p0: PathPartition, max_steps: Optional[int] = None
) -> tuple[PathPartition, SearchTrace]:
    """First-improvement descent; stops at a fixpoint or the step budget."""
    report = validate_partition(g, p0)
    if not report.ok:
        raise MoveError(f"invalid start partition: {report.problems[0]}")
    if max_steps is None:
        max_steps = 10 * max(g.n, 1)
    p = p0
    trace = SearchTrace()
    while trace.iterations < max_steps:
        l = build_layering(g, p)
        moves = enumerate_moves(g, p, l)
        if not moves:
            trace.fixpoint_reached = True
            return p, trace
        before = potential(p)
        p = apply_move(g, p, moves[0])
        trace.steps.append(SearchStep(moves[0], before, potential(p)))
        trace.iterations += 1
    l = build_layering(g, p)
    trace.fixpoint_reached = not enumerate_moves(g, p, l)
    return p, trace


@dataclass
class ClaimReport:
    is_fixpoint: bool
    n3_branch: bool      # no order-1 or order-2 paths: mu <= n/3 applies
    c1a: bool
    c1b: bool
    c2a: bool
    c2b: bool
    c3: bool
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.is_fixpoint and self.c1a and self.c1b and self.c2a and self.c2b and self.c3

    def to_dict(self) -> dict:
        return {
            "is_fixpoint": self.is_fixpoint,
            "n3_branch": self.n3_branch,
            "c1a": self.c1a,
            "c1b": self.c1b,
            "c2a": self.c2a,
            "c2b": self.c2b,
            "c3": self.c3,
            "ok": self.ok,
            "details": list(self.details),
        }


def assert_fixpoint_claims(g: Graph, p: PathPartition, l: Layering) -> ClaimReport:
    """Check the structural fixpoint properties C1a/C1b/C2a/C2b/C3.

    Neighborhood checks use external neighbors (outside the vertex's own
    path); a 2-path end is trivially adjacent to its partner.
    """
    st = stats(g, p)
    details: list[str] = []
    is_fixpoint = not enumerate_moves(g, p, l)
    if not is_fixpoint:
        details.append("partition is not a local-search fixpoint")
    n3_branch = not st.singletons and not st.pair_ends
    if n3_branch:
        details.append("no order-1/2 paths: claims hold vacuously, mu <= n/3")
    hub = st.centers3 | st.interior4 | st.centers5

    c1a = True
    for v in sorted(st.singletons):
        extra = set(g.adj[v]) - st.centers3
        if extra:
            c1a = False
            details.append(f"C1a: singleton {v} has neighbors {sorted(extra)} outside C3")
    c1b = True
    for a in sorted(st.pair_ends):
        own = set(p.paths[p.path_of(a)])
        extra = (set(g.adj[a]) - own) - hub
        if extra:
            c1b = False
            details.append(
                f"C1b: pair end {a} has neighbors {sorted(extra)} outside C3/Int(R4)/C5"
            )
    c2a = True
    extra = l.w_union - hub
    if extra:
        c2a = False
        details.append(f"C2a: W vertices {sorted(extra)} outside C3/Int(R4)/C5")
    c2b = not l.bad
    if not c2b:
        details.append(f"C2b: bad-order vertices {sorted(l.bad)}")
    c3 = True
    for pi, path in enumerate(p.paths):
        if len(path) != 4:
            continue
        w_on_path = [v for v in path if v in l.w_union]
        if len(w_on_path) > 2:
            c3 = False
            details.append(f"C3: 4-path {pi} carries {len(w_on_path)} W vertices")
        elif len(w_on_path) == 2:
            eps = external_edge_count(g, l.x_union, path)
            if eps != 4:
                c3 = False
                details.append(
                    f"C3: 4-path {pi} with two W vertices has eps(X,R)={eps} != 4"
                )
    return ClaimReport(
        is_fixpoint=is_fixpoint,
        n3_branch=n3_branch,
        c1a=c1a,
        c1b=c1b,
        c2a=c2a,
        c2b=c2b,
        c3=c3,
        details=details,
    )
