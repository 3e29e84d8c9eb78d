"""Simple undirected graphs with dense integer vertex IDs, plus text ingestion.

Vertices are always 0..n-1.  Two text formats are accepted:

* edge list: optional header ``n <count>``, then one ``u v`` pair per line,
  ``#`` starts a comment;
* DIMACS .col style: ``c`` comments, ``p edge <n> <m>``, ``e u v`` with
  1-indexed vertices (converted to 0-indexed).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Invalid graph construction or query."""


class ParseError(GraphError):
    """Malformed graph text; carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


@dataclass(frozen=True)
class DegreeProfile:
    min_degree: int
    max_degree: int


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "adj", "_edge_count")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in adj))
        object.__setattr__(self, "_edge_count", sum(len(s) for s in adj) // 2)

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("Graph is immutable")

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, sorted."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield (u, v)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def degree_profile(g: Graph) -> DegreeProfile:
    if g.n == 0:
        raise GraphError("degree profile of the empty graph is undefined")
    degs = [g.degree(v) for v in range(g.n)]
    return DegreeProfile(min(degs), max(degs))


def external_edge_count(g: Graph, a: Iterable[int], b: Iterable[int]) -> int:
    """Number of edges with one end in ``a`` and the other in ``b``.

    An edge with both ends in the intersection counts once.
    """
    sa, sb = set(a), set(b)
    for v in sa | sb:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    count = 0
    for u in sa:
        for v in g.adj[u]:
            if v in sb and not (v in sa and u in sb and v < u):
                count += 1
    return count


def parse_edge_list(text: str) -> Graph:
    declared_n: int | None = None
    edges: list[tuple[int, int]] = []
    max_seen = -1
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2:
                raise ParseError("header must be 'n <count>'", line_no)
            try:
                declared_n = int(parts[1])
            except ValueError:
                raise ParseError(f"bad vertex count {parts[1]!r}", line_no) from None
            if declared_n < 0:
                raise ParseError("vertex count must be nonnegative", line_no)
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer endpoint in {line!r}", line_no) from None
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex in {line!r}", line_no)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line_no)
        if declared_n is not None and (u >= declared_n or v >= declared_n):
            raise ParseError(
                f"edge ({u}, {v}) exceeds declared n={declared_n}", line_no
            )
        edges.append((u, v))
        max_seen = max(max_seen, u, v)
    n = declared_n if declared_n is not None else max_seen + 1
    return Graph(n, edges)


def parse_dimacs(text: str) -> Graph:
    declared_n: int | None = None
    edges: list[tuple[int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 3:
                raise ParseError("expected 'p edge <n> <m>'", line_no)
            try:
                declared_n = int(parts[2])
            except ValueError:
                raise ParseError(f"bad vertex count {parts[2]!r}", line_no) from None
        elif parts[0] == "e":
            if len(parts) != 3:
                raise ParseError(f"expected 'e u v', got {line!r}", line_no)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise ParseError(f"non-integer endpoint in {line!r}", line_no) from None
            if declared_n is None:
                raise ParseError("edge line before 'p' header", line_no)
            if not (0 <= u < declared_n and 0 <= v < declared_n):
                raise ParseError(f"edge ({u + 1}, {v + 1}) out of range", line_no)
            if u == v:
                raise ParseError(f"self-loop at vertex {u + 1}", line_no)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown DIMACS line {line!r}", line_no)
    if declared_n is None:
        raise ParseError("missing 'p edge <n> <m>' header")
    return Graph(declared_n, edges)


def parse_graph(text: str) -> Graph:
    """Auto-detect edge-list vs DIMACS format."""
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line[0] in "cp" or line.startswith("e "):
            return parse_dimacs(text)
        break
    return parse_edge_list(text)


def load_graph(path: str) -> Graph:
    """Read a graph from a file path, or from stdin when path is '-'."""
    if path == "-":
        import sys

        return parse_graph(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def serialize_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    n = 0
    edges: list[tuple[int, int]] = []
    for g in graphs:
        edges.extend((u + n, v + n) for u, v in g.edges())
        n += g.n
    return Graph(n, edges)


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in g.adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


def is_two_connected(g: Graph) -> bool:
    """Connected, at least 3 vertices, and no articulation point."""
    if g.n < 3 or not is_connected(g):
        return False
    # iterative lowpoint computation rooted at 0
    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    timer = 0
    root_children = 0
    stack: list[tuple[int, Iterator[int]]] = [(0, iter(g.adj[0]))]
    disc[0] = low[0] = timer
    timer += 1
    while stack:
        u, it = stack[-1]
        advanced = False
        for v in it:
            if disc[v] == -1:
                parent[v] = u
                disc[v] = low[v] = timer
                timer += 1
                if u == 0:
                    root_children += 1
                stack.append((v, iter(g.adj[v])))
                advanced = True
                break
            elif v != parent[u]:
                low[u] = min(low[u], disc[v])
        if not advanced:
            stack.pop()
            p = parent[u]
            if p != -1:
                low[p] = min(low[p], low[u])
                if p != 0 and low[u] >= disc[p]:
                    return False
    return root_children <= 1
