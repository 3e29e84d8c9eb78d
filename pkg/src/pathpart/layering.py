"""Layered sets grown from the short paths of a partition.

Starting from the singleton vertices and the ends of 2-paths (X_1), each
round adds the ends of every path whose interior is hit by an external
neighbor of the current X; W collects those external neighbors, layered by
the round that first reaches them.  Alpha sequences are the chains of
inter-path edges certifying W membership; from them two rewired partitions
(variants P1 and P2) with the same path count are derived.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional

from .graph import Graph
from .partition import (
    Edge,
    PathPartition,
    norm_edge,
    partition_from_edges,
)


class LayeringError(ValueError):
    pass


class InconsistentSequence(LayeringError):
    """Alpha sequence no longer matches the partition (stale layering)."""


def _n_ext(g: Graph, p: PathPartition, x: int) -> frozenset[int]:
    """Neighbors of x outside x's own path."""
    own = set(p.paths[p.path_of(x)])
    return frozenset(v for v in g.adj[x] if v not in own)


@dataclass
class Layering:
    x_layers: list[set[int]]          # cumulative X_1 ⊆ X_2 ⊆ ... ⊆ X_s
    w_layers: list[set[int]]          # disjoint W_1, ..., W_s
    x_union: set[int]
    w_union: set[int]
    x_layer_of: dict[int, int]        # vertex -> first t with v in X_t (1-based)
    w_layer_of: dict[int, int]
    back_edge: dict[int, Edge]        # w -> (x, w) with x in X_t \ X_{t-1}
    good_order: set[int] = field(default_factory=set)   # W_a
    bad: set[int] = field(default_factory=set)          # W_b
    prime_paths: set[int] = field(default_factory=set)  # paths with both ends in X

    @property
    def rounds(self) -> int:
        return len(self.x_layers)


@dataclass
class AlphaSequence:
    """Chain (x_1, w_1), ..., (x_r, w_r) of inter-path edges."""

    steps: list[tuple[int, int]]
    # per-path terminal extremity forced by the chain (hosts of w_1..w_{r-1},
    # plus the start path of x_1)
    terminal_of: dict[int, int]
    host_path: int  # path carrying w_r

    @property
    def r(self) -> int:
        return len(self.steps)

    @property
    def target(self) -> int:
        return self.steps[-1][1]


def build_layering(g: Graph, p: PathPartition) -> Layering:
    """Grow the X/W layers to their fixpoint.

    Back edges keep one witness per W vertex, the lexicographically smallest
    (x, w) with x in the freshly added part of X.
    """
    x_layers: list[set[int]] = []
    w_layers: list[set[int]] = []
    x_layer_of: dict[int, int] = {}
    w_layer_of: dict[int, int] = {}
    back_edge: dict[int, Edge] = {}

    x1 = {path[0] for path in p.paths if len(path) == 1}
    for path in p.paths:
        if len(path) == 2:
            x1.update(path)
    x_cur: set[int] = set()
    n_ext_cur: set[int] = set()
    fresh = x1
    t = 0
    while fresh:
        t += 1
        x_cur = x_cur | fresh
        for v in fresh:
            x_layer_of[v] = t
        x_layers.append(set(x_cur))
        new_ext: set[int] = set()
        for x in sorted(fresh):
            for w in sorted(_n_ext(g, p, x)):
                if w not in n_ext_cur and w not in new_ext:
                    new_ext.add(w)
                    back_edge[w] = (x, w)
                elif w in new_ext:
                    # keep lexicographically smallest witness within the layer
                    if (x, w) < back_edge[w]:
                        back_edge[w] = (x, w)
        w_layers.append(new_ext)
        for w in new_ext:
            w_layer_of[w] = t
        n_ext_cur |= new_ext
        # next X layer: ends of paths whose interior meets the known W
        fresh = set()
        for path in p.paths:
            if path[0] in x_cur:  # ends enter together
                continue
            if any(v in n_ext_cur for v in path[1:-1]):
                fresh.add(path[0])
                fresh.add(path[-1])
    # the final round discovers no external neighbors; drop empty tail layers
    while w_layers and not w_layers[-1]:
        w_layers.pop()

    prime = {
        pi
        for pi, path in enumerate(p.paths)
        if path[0] in x_cur and path[-1] in x_cur
    }
    lay = Layering(
        x_layers=x_layers,
        w_layers=w_layers,
        x_union=x_cur,
        w_union=set(w_layer_of),
        x_layer_of=x_layer_of,
        w_layer_of=w_layer_of,
        back_edge=back_edge,
        prime_paths=prime,
    )
    lay.good_order, lay.bad = classify_good_order(g, p, lay)
    return lay


def classify_good_order(
    g: Graph, p: PathPartition, l: Layering
) -> tuple[set[int], set[int]]:
    """Split W into W_a (good order) and W_b.

    w in W_r has good order when both ends of its host path enter X exactly
    at layer r+1.
    """
    good: set[int] = set()
    bad: set[int] = set()
    for w, r in l.w_layer_of.items():
        a, b = p.ends(p.path_of(w))
        if l.x_layer_of.get(a) == r + 1 and l.x_layer_of.get(b) == r + 1:
            good.add(w)
        else:
            bad.add(w)
    return good, bad


def alpha_sequence(g: Graph, p: PathPartition, l: Layering, w: int) -> AlphaSequence:
    """Reconstruct the chain reaching ``w`` by following back edges.

    Deterministic: at each hop the smallest interior witness of the previous
    layer is chosen.
    """
    if w not in l.w_layer_of:
        raise LayeringError(f"vertex {w} is not in W")
    steps: list[tuple[int, int]] = []
    terminal_of: dict[int, int] = {}
    host_path = p.path_of(w)
    cur_w = w
    t = l.w_layer_of[w]
    while True:
        x, _ = l.back_edge[cur_w]
        steps.append((x, cur_w))
        if t == 1:
            terminal_of[p.path_of(x)] = x
            break
        # x entered X at layer t: its path was pulled in by an interior
        # witness from the previous W layer
        path = p.paths[p.path_of(x)]
        witnesses = [
            v for v in path[1:-1] if l.w_layer_of.get(v) == t - 1
        ]
        if not witnesses:
            raise InconsistentSequence(
                f"no layer-{t - 1} witness on the path of {x}"
            )
        prev_w = min(witnesses)
        terminal_of[p.path_of(x)] = x
        cur_w = prev_w
        t -= 1
    steps.reverse()
    return AlphaSequence(steps=steps, terminal_of=terminal_of, host_path=host_path)


def _oriented(path: tuple[int, ...], terminal: int) -> tuple[int, ...]:
    if path[-1] == terminal:
        return path
    if path[0] == terminal:
        return path[::-1]
    raise InconsistentSequence(f"{terminal} is not an end of its path")


def _succ_pred(path: tuple[int, ...], terminal: int, v: int) -> tuple[Optional[int], Optional[int]]:
    ordered = _oriented(path, terminal)
    i = ordered.index(v)
    succ = ordered[i + 1] if i + 1 < len(ordered) else None
    pred = ordered[i - 1] if i > 0 else None
    return succ, pred


def derive_rewired(
    g: Graph,
    p: PathPartition,
    a: AlphaSequence,
    variant: Literal["P1", "P2"],
    terminal_end: Optional[int] = None,
) -> PathPartition:
    """Apply the chain rewiring.

    P1 deletes every successor edge w_t w_t^+; P2 swaps the last deletion to
    the predecessor edge w_r w_r^-.  ``terminal_end`` fixes the orientation
    of the path carrying the last w (defaults to its smaller end unless the
    chain already forces one).
    """
    if variant not in ("P1", "P2"):
        raise ValueError(f"unknown variant {variant!r}")
    terminal_of = dict(a.terminal_of)
    host = a.host_path
    if host in terminal_of:
        if terminal_end is not None and terminal_of[host] != terminal_end:
            raise InconsistentSequence("chain forces the opposite host orientation")
    else:
        ends = p.ends(host)
        terminal_of[host] = (
            terminal_end if terminal_end is not None else min(ends)
        )
        if terminal_of[host] not in ends:
            raise InconsistentSequence(f"{terminal_end} is not an end of the host path")

    removed: set[Edge] = set()
    added: set[Edge] = set()
    r = a.r
    for t, (x, w) in enumerate(a.steps, start=1):
        w_path_idx = p.path_of(w)
        if w_path_idx == p.path_of(x):
            raise InconsistentSequence(f"chain edge {x}-{w} lies inside one path")
        if not g.has_edge(x, w):
            raise InconsistentSequence(f"{x}-{w} is not an edge")
        term = terminal_of.get(w_path_idx)
        if term is None:
            raise InconsistentSequence(f"no orientation for the path of {w}")
        succ, pred = _succ_pred(p.paths[w_path_idx], term, w)
        if variant == "P1" or t < r:
            if succ is None:
                raise InconsistentSequence(f"{w} has no successor")
            removed.add(norm_edge(w, succ))
        else:
            if pred is None:
                raise InconsistentSequence(f"{w} has no predecessor")
            removed.add(norm_edge(w, pred))
        added.add(norm_edge(x, w))

    edges = (p.path_edges() - removed) | added
    result = partition_from_edges(g, edges)
    if len(result.paths) != len(p.paths):
        raise InconsistentSequence("rewiring changed the path count")
    return result


def split_orders(
    a: AlphaSequence, p: PathPartition, terminal_end: Optional[int] = None
) -> tuple[int, int]:
    """Orders (i_1, i_2) of the two sides of the host path around the last w.

    i_1 counts [w^+ .. terminal], i_2 counts [initial .. w^-]; together with
    w itself they make up the host order: i_1 + i_2 + 1 = i.
    """
    host = a.host_path
    path = p.paths[host]
    terminal_of = a.terminal_of
    if host in terminal_of:
        term = terminal_of[host]
    elif terminal_end is not None:
        term = terminal_end
    else:
        term = min(path[0], path[-1])
    ordered = _oriented(path, term)
    pos = ordered.index(a.target)
    return len(ordered) - pos - 1, pos


def layering_to_dict(g: Graph, p: PathPartition, l: Layering) -> dict:
    """JSON-friendly trace of the layering."""
    sequences = {}
    for w in sorted(l.w_union):
        seq = alpha_sequence(g, p, l, w)
        sequences[str(w)] = [[x, ww] for x, ww in seq.steps]
    return {
        "x_layers": [sorted(s) for s in l.x_layers],
        "w_layers": [sorted(s) for s in l.w_layers],
        "x_union": sorted(l.x_union),
        "w_union": sorted(l.w_union),
        "back_edges": {str(w): list(e) for w, e in sorted(l.back_edge.items())},
        "alpha_sequences": sequences,
        "good_order": sorted(l.good_order),
        "bad_order": sorted(l.bad),
        "prime_paths": sorted(l.prime_paths),
    }
