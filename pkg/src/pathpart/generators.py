"""Deterministic graph constructors: extremal families, seeded random corpora
with degree windows, connected cubic graphs, and the transcribed illustration
fixture.

Randomness comes exclusively from a splitmix64 stream so that the same spec
and seed reproduce the identical edge set on every platform.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources

from .graph import Graph, GraphError, disjoint_union, is_connected, parse_edge_list
from .partition import PathPartition, parse_partition

_MASK64 = (1 << 64) - 1

# sha256 of the frozen fixture data files; transcription notes live alongside
# the files in data/.
_FIXTURE_SHA = {
    "figure1.edges": "3e9dc3963c25aaab14b3a7e2f091b707d13d0239f30feee1141d37ee0e5e2936",
    "figure1.paths": "cfaf107c1ef27952def62d5c3165f2e3639327ae32897095f5ebe03328cf0aa6",
}

# Labeled vertices of the fixture drawing, mapped to integer IDs.
FIGURE1_LABELS = {
    "x1": 0, "x2": 1, "x3": 2, "x4": 3, "x5": 4, "x6": 5, "x7": 6,
    "x8": 7, "w1": 8, "x9": 9, "x10": 10, "w2": 11, "x11": 13,
    "x12": 14, "w3": 15, "w4": 16, "x13": 17, "x14": 18, "w5": 20,
    "x15": 22, "x16": 23, "w6": 25, "x17": 27, "x18": 28, "w7": 30,
    "x19": 32, "x20": 33, "w8": 35, "x21": 37,
}


class SplitMix64:
    """Tiny, documented 64-bit mixing generator (splitmix64)."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, seq: list) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.randrange(i + 1)
            seq[i], seq[j] = seq[j], seq[i]


class GenerationError(GraphError):
    """Requested family parameters are infeasible (after the retry budget)."""


def bipartite_copies(delta: int, Delta: int, m: int) -> Graph:
    """m disjoint copies of the complete bipartite graph K_{delta,Delta}."""
    if not (1 <= delta <= Delta) or m < 1:
        raise ValueError("need 1 <= delta <= Delta and m >= 1")
    edges = [(i, delta + j) for i in range(delta) for j in range(Delta)]
    one = Graph(delta + Delta, edges)
    return disjoint_union([one] * m)


def clique_copies(delta: int, m: int) -> Graph:
    """m disjoint copies of the complete graph on delta+1 vertices."""
    if delta < 1 or m < 1:
        raise ValueError("need delta >= 1 and m >= 1")
    k = delta + 1
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    one = Graph(k, edges)
    return disjoint_union([one] * m)


def random_bounded(
    n: int, delta: int, Delta: int, seed: int, max_attempts: int = 200
) -> Graph:
    """Seeded graph with min degree >= delta and max degree <= Delta.

    Edges are inserted at random toward deficient vertices, with a bounded
    number of fresh attempts when an insertion gets stuck.  Connectivity is
    not guaranteed (the bounds do not need it).
    """
    if not (1 <= delta <= Delta <= n - 1):
        raise GenerationError(f"infeasible degree window ({delta}, {Delta}) for n={n}")
    rng = SplitMix64(seed)
    for _ in range(max_attempts):
        adj: list[set[int]] = [set() for _ in range(n)]
        stuck = False
        while not stuck:
            deficient = [v for v in range(n) if len(adj[v]) < delta]
            if not deficient:
                break
            v = rng.choice(deficient)
            cand = [
                u
                for u in range(n)
                if u != v and u not in adj[v] and len(adj[u]) < Delta
            ]
            if not cand:
                stuck = True
                break
            u = rng.choice(cand)
            adj[v].add(u)
            adj[u].add(v)
        if not stuck:
            edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
            return Graph(n, edges)
    raise GenerationError(
        f"could not realize degree window ({delta}, {Delta}) on n={n} "
        f"after {max_attempts} attempts"
    )


def random_cubic(n: int, seed: int, max_attempts: int = 10_000) -> Graph:
    """Connected 3-regular graph sampled by the pairing model.

    Stubs are shuffled and paired; pairings with loops or repeated edges and
    disconnected outcomes are rejected and resampled.
    """
    if n % 2 != 0:
        raise GenerationError("cubic graphs need an even number of vertices")
    if n < 4:
        raise GenerationError("cubic graphs need n >= 4")
    rng = SplitMix64(seed)
    for _ in range(max_attempts):
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in edges:
                ok = False
                break
            edges.add(e)
        if not ok:
            continue
        g = Graph(n, sorted(edges))
        if is_connected(g):
            return g
    raise GenerationError(f"no connected cubic pairing found for n={n}")


def _load_fixture_text(name: str) -> str:
    data = resources.files("pathpart.data").joinpath(name).read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    if digest != _FIXTURE_SHA[name]:
        raise GraphError(f"fixture file {name} is corrupted (sha256 mismatch)")
    return data.decode("utf-8")


def figure1_fixture() -> tuple[Graph, PathPartition]:
    """The frozen 38-vertex illustration graph and its 11-path partition."""
    g = parse_edge_list(_load_fixture_text("figure1.edges"))
    p = parse_partition(_load_fixture_text("figure1.paths"), g.n)
    return g, p


FAMILIES = ("bipartite_copies", "clique_copies", "random_bounded", "random_cubic", "fixture")


@dataclass(frozen=True)
class CorpusSpec:
    family: str
    parameters: tuple[tuple[str, int], ...] = field(default_factory=tuple)
    seed: int = 0

    def params(self) -> dict[str, int]:
        return dict(self.parameters)

    def key(self) -> str:
        parts = [self.family] + [f"{k}={v}" for k, v in sorted(self.parameters)]
        parts.append(f"seed={self.seed}")
        return " ".join(parts)


def build(spec: CorpusSpec) -> Graph:
    params = spec.params()
    if spec.family == "bipartite_copies":
        return bipartite_copies(params["delta"], params["Delta"], params.get("m", 1))
    if spec.family == "clique_copies":
        return clique_copies(params["delta"], params.get("m", 1))
    if spec.family == "random_bounded":
        return random_bounded(params["n"], params["delta"], params["Delta"], spec.seed)
    if spec.family == "random_cubic":
        return random_cubic(params["n"], spec.seed)
    if spec.family == "fixture":
        return figure1_fixture()[0]
    raise GenerationError(f"unknown family {spec.family!r}")
