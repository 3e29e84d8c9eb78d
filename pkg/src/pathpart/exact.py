"""Exact minimum path-partition oracle via dynamic programming over subsets.

State: dp[S][v] = least number of paths covering exactly the vertex set S
with the current path ending at v.  Transitions either extend the current
path to a free neighbor (same count) or open a new path at any free vertex
(count + 1).  The witness partition is rebuilt by walking the table
backwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError
from .partition import PathPartition

DEFAULT_LIMIT = 20
_INF = 255


class ExactLimitError(GraphError):
    """Instance exceeds the configured subset-DP size limit."""


@dataclass
class ExactResult:
    mu: int
    witness: PathPartition
    explored_states: int


def _dp_table(n: int, adj_mask: list[int]) -> bytearray:
    size = 1 << n
    dp = bytearray([_INF]) * (size * n)
    for v in range(n):
        dp[(1 << v) * n + v] = 1
    full = size - 1
    for mask in range(1, size):
        base = mask * n
        best_open = _INF
        m = mask
        while m:
            b = m & -m
            v = b.bit_length() - 1
            m &= m - 1
            cur = dp[base + v]
            if cur == _INF:
                continue
            if cur < best_open:
                best_open = cur
            free_adj = adj_mask[v] & ~mask & full
            while free_adj:
                bb = free_adj & -free_adj
                u = bb.bit_length() - 1
                free_adj &= free_adj - 1
                idx = (mask | bb) * n + u
                if dp[idx] > cur:
                    dp[idx] = cur
        if best_open < _INF:
            new_count = best_open + 1
            free = ~mask & full
            while free:
                bb = free & -free
                u = bb.bit_length() - 1
                free &= free - 1
                idx = (mask | bb) * n + u
                if dp[idx] > new_count:
                    dp[idx] = new_count
    return dp


def _reconstruct(n: int, adj_mask: list[int], dp: bytearray) -> list[list[int]]:
    full = (1 << n) - 1
    mu = _INF
    end = -1
    for v in range(n):
        if dp[full * n + v] < mu:
            mu = dp[full * n + v]
            end = v
    paths: list[list[int]] = []
    mask, v = full, end
    path = [v]
    while True:
        prev_mask = mask ^ (1 << v)
        if prev_mask == 0:
            paths.append(path[::-1])
            break
        val = dp[mask * n + v]
        nxt = None
        # prefer extending the same path
        cand = adj_mask[v] & prev_mask
        while cand:
            bb = cand & -cand
            u = bb.bit_length() - 1
            cand &= cand - 1
            if dp[prev_mask * n + u] == val:
                nxt = (u, False)
                break
        if nxt is None:
            cand = prev_mask
            while cand:
                bb = cand & -cand
                u = bb.bit_length() - 1
                cand &= cand - 1
                if dp[prev_mask * n + u] == val - 1:
                    nxt = (u, True)
                    break
        if nxt is None:
            raise AssertionError("dp table has no consistent predecessor")
        u, new_path = nxt
        if new_path:
            paths.append(path[::-1])
            path = [u]
        else:
            path.append(u)
        mask, v = prev_mask, u
    paths.reverse()
    return paths


def exact_mu(g: Graph, limit: int = DEFAULT_LIMIT) -> ExactResult:
    """Minimum path-partition size with an optimal witness partition."""
    if g.n == 0:
        raise GraphError("exact oracle needs at least one vertex")
    if g.n > limit:
        raise ExactLimitError(
            f"n={g.n} exceeds the subset-DP limit of {limit}; "
            "raise the limit explicitly to force the computation"
        )
    adj_mask = [0] * g.n
    for u in range(g.n):
        for v in g.adj[u]:
            adj_mask[u] |= 1 << v
    dp = _dp_table(g.n, adj_mask)
    explored = sum(1 for x in dp if x != _INF)
    paths = _reconstruct(g.n, adj_mask, dp)
    witness = PathPartition(g.n, paths)
    mu = len(paths)
    return ExactResult(mu=mu, witness=witness, explored_states=explored)


def has_hamiltonian_path(g: Graph, limit: int = DEFAULT_LIMIT) -> bool:
    return exact_mu(g, limit=limit).mu == 1
