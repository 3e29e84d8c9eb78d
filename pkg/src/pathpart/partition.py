"""Path partitions: representation, validation, statistics and greedy start.

A partition is a list of vertex-disjoint paths covering every vertex of the
host graph.  Statistics follow the usual bookkeeping for this problem: p_i
counts paths of order i, V1 the singleton vertices, V2 the ends of 2-vertex
paths, C3/C5 the centers of paths of order 3 and 5.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .graph import Graph

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class PartitionError(ValueError):
    pass


class Potential(NamedTuple):
    """Lexicographic objective minimized by the local search."""

    path_count: int
    p1: int
    p2: int


class PathPartition:
    """Ordered vertex-disjoint paths; positions indexed by ``vertex_to_path``."""

    __slots__ = ("n", "paths", "vertex_to_path")

    def __init__(self, n: int, paths: Iterable[Sequence[int]]):
        self.n = n
        self.paths: tuple[tuple[int, ...], ...] = tuple(tuple(p) for p in paths)
        index: dict[int, tuple[int, int]] = {}
        for pi, path in enumerate(self.paths):
            for pos, v in enumerate(path):
                index[v] = (pi, pos)
        self.vertex_to_path = index

    def path_of(self, v: int) -> int:
        return self.vertex_to_path[v][0]

    def position_of(self, v: int) -> int:
        return self.vertex_to_path[v][1]

    def path_edges(self) -> set[Edge]:
        out: set[Edge] = set()
        for path in self.paths:
            for a, b in zip(path, path[1:]):
                out.add(norm_edge(a, b))
        return out

    def ends(self, pi: int) -> tuple[int, int]:
        path = self.paths[pi]
        return path[0], path[-1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PathPartition)
            and self.n == other.n
            and self.paths == other.paths
        )

    def __repr__(self) -> str:
        return f"PathPartition(n={self.n}, paths={len(self.paths)})"


@dataclass
class ValidationReport:
    ok: bool
    problems: list[str] = field(default_factory=list)


@dataclass
class PartitionStats:
    order_counts: dict[int, int]
    singletons: set[int]          # V1
    pair_ends: set[int]           # V2
    centers3: set[int]            # C3
    centers5: set[int]            # C5
    interior4: set[int]           # Int of order-4 paths
    end_vertices: set[int]        # End(P)
    p4_one_w: Optional[int] = None   # |R_4^1|, needs a layering
    p4_two_w: Optional[int] = None   # |R_4^2|

    def p(self, i: int) -> int:
        return self.order_counts.get(i, 0)


def validate_partition(g: Graph, p: PathPartition) -> ValidationReport:
    problems: list[str] = []
    if p.n != g.n:
        problems.append(f"partition declares n={p.n}, graph has n={g.n}")
    seen: set[int] = set()
    for pi, path in enumerate(p.paths):
        if not path:
            problems.append(f"path {pi} is empty")
            continue
        for v in path:
            if not 0 <= v < g.n:
                problems.append(f"path {pi}: vertex {v} out of range")
            elif v in seen:
                problems.append(f"vertex {v} duplicated")
            else:
                seen.add(v)
        for a, b in zip(path, path[1:]):
            if 0 <= a < g.n and 0 <= b < g.n and not g.has_edge(a, b):
                problems.append(f"path {pi}: {a}-{b} is not an edge")
    missing = set(range(g.n)) - seen
    for v in sorted(missing):
        problems.append(f"vertex {v} not covered")
    return ValidationReport(ok=not problems, problems=problems)


def stats(
    g: Graph,
    p: PathPartition,
    path_subset: Optional[Iterable[int]] = None,
    layering=None,
) -> PartitionStats:
    """Classification statistics, optionally restricted to a path subset.

    With a layering given, also splits the order-4 paths by their number of
    W vertices (p4_one_w / p4_two_w).
    """
    indices = range(len(p.paths)) if path_subset is None else sorted(set(path_subset))
    order_counts: dict[int, int] = {}
    singletons: set[int] = set()
    pair_ends: set[int] = set()
    centers3: set[int] = set()
    centers5: set[int] = set()
    interior4: set[int] = set()
    end_vertices: set[int] = set()
    for pi in indices:
        path = p.paths[pi]
        i = len(path)
        order_counts[i] = order_counts.get(i, 0) + 1
        end_vertices.update((path[0], path[-1]))
        if i == 1:
            singletons.add(path[0])
        elif i == 2:
            pair_ends.update(path)
        elif i == 3:
            centers3.add(path[1])
        elif i == 4:
            interior4.update(path[1:3])
        elif i == 5:
            centers5.add(path[2])
    st = PartitionStats(
        order_counts=order_counts,
        singletons=singletons,
        pair_ends=pair_ends,
        centers3=centers3,
        centers5=centers5,
        interior4=interior4,
        end_vertices=end_vertices,
    )
    if layering is not None:
        one = two = 0
        for pi in indices:
            path = p.paths[pi]
            if len(path) != 4:
                continue
            k = sum(1 for v in path if v in layering.w_union)
            if k == 1:
                one += 1
            elif k == 2:
                two += 1
        st.p4_one_w, st.p4_two_w = one, two
    return st


def potential(p: PathPartition) -> Potential:
    p1 = sum(1 for path in p.paths if len(path) == 1)
    p2 = sum(1 for path in p.paths if len(path) == 2)
    return Potential(len(p.paths), p1, p2)


def greedy_initial(g: Graph) -> PathPartition:
    """Deterministic maximal path stripping.

    Start at the lowest uncovered vertex, repeatedly extend the tail to the
    lowest uncovered neighbor, then extend the head the same way.
    """
    if g.n < 1:
        raise PartitionError("greedy start needs at least one vertex")
    covered: set[int] = set()
    paths: list[list[int]] = []
    for start in range(g.n):
        if start in covered:
            continue
        path = [start]
        covered.add(start)
        while True:
            cand = [v for v in g.adj[path[-1]] if v not in covered]
            if not cand:
                break
            v = min(cand)
            path.append(v)
            covered.add(v)
        while True:
            cand = [v for v in g.adj[path[0]] if v not in covered]
            if not cand:
                break
            v = min(cand)
            path.insert(0, v)
            covered.add(v)
        paths.append(path)
    return PathPartition(g.n, paths)


def partition_from_edges(g: Graph, edges: Iterable[Edge]) -> PathPartition:
    """Rebuild a partition from its edge set.

    The edges must form a spanning linear forest of ``g`` (all degrees at
    most 2, no cycles); raises PartitionError otherwise.  Paths are listed
    by their smallest end vertex, oriented from that end.
    """
    nbr: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in set(norm_edge(a, b) for a, b in edges):
        if not g.has_edge(u, v):
            raise PartitionError(f"{u}-{v} is not an edge of the graph")
        nbr[u].append(v)
        nbr[v].append(u)
        if len(nbr[u]) > 2 or len(nbr[v]) > 2:
            raise PartitionError(f"vertex degree above 2 at {u}-{v}")
    seen: set[int] = set()
    keyed: list[tuple[int, list[int]]] = []
    for v in range(g.n):
        if v in seen or len(nbr[v]) > 1:
            continue
        # v is an isolated vertex or a path end
        path = [v]
        seen.add(v)
        prev, cur = v, (nbr[v][0] if nbr[v] else None)
        while cur is not None:
            path.append(cur)
            seen.add(cur)
            nxt = [w for w in nbr[cur] if w != prev]
            prev, cur = cur, (nxt[0] if nxt else None)
        keyed.append((min(path[0], path[-1]), path if path[0] < path[-1] else path[::-1]))
    if len(seen) != g.n:
        raise PartitionError("edge set contains a cycle")
    keyed.sort()
    return PathPartition(g.n, [path for _, path in keyed])


def serialize_partition(p: PathPartition) -> str:
    """One path per line, vertices space-separated."""
    return "\n".join(" ".join(str(v) for v in path) for path in p.paths) + "\n"


def parse_partition(text: str, n: int) -> PathPartition:
    paths = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            paths.append([int(tok) for tok in line.split()])
        except ValueError:
            raise PartitionError(f"bad partition line {line!r}") from None
    return PathPartition(n, paths)
