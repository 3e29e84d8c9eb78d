"""Shared helpers: small named graphs and independent reference oracles.

The reference oracles deliberately use different algorithms from the package
(recursive enumeration and permutation backtracking instead of subset DP) so
that agreement is meaningful.
"""

from __future__ import annotations

from functools import lru_cache

from pathpart import Graph


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(n: int) -> Graph:
    """K_{1,n-1} with center 0."""
    return Graph(n, [(0, i) for i in range(1, n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def brute_force_mu(g: Graph) -> int:
    """Minimum path-partition size by exhaustive recursion (n <= 10 or so).

    For the lowest uncovered vertex, every simple path through it inside the
    uncovered set is tried; memoized on the uncovered set.
    """
    adj = g.adj

    def paths_through(v: int, allowed: frozenset) -> set[tuple[int, ...]]:
        out: set[tuple[int, ...]] = set()

        def extend(path: list[int]) -> None:
            canon = tuple(path) if path[0] <= path[-1] else tuple(reversed(path))
            if canon in out:
                return
            out.add(canon)
            members = set(path)
            for u in adj[path[-1]]:
                if u in allowed and u not in members:
                    extend(path + [u])
            for u in adj[path[0]]:
                if u in allowed and u not in members:
                    extend([u] + path)

        extend([v])
        return out

    @lru_cache(maxsize=None)
    def best(uncovered: frozenset) -> int:
        if not uncovered:
            return 0
        v = min(uncovered)
        return 1 + min(
            best(uncovered - set(p)) for p in paths_through(v, uncovered)
        )

    return best(frozenset(range(g.n)))


def backtracking_hamiltonian_path(g: Graph) -> bool:
    """Hamiltonian-path existence by plain DFS over partial orderings."""
    n = g.n
    if n == 1:
        return True

    def extend(v: int, visited: set[int]) -> bool:
        if len(visited) == n:
            return True
        for u in sorted(g.adj[v]):
            if u not in visited:
                visited.add(u)
                if extend(u, visited):
                    return True
                visited.remove(u)
        return False

    return any(extend(start, {start}) for start in range(n))
