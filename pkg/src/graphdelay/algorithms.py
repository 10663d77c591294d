"""Pull-style vertex kernels, their stopping rules, and serial oracles.

The engine runs compiled equivalents of these kernels; the per-vertex
functions here define the semantics and back the unit tests. Oracles are
independent serial implementations (double-precision power iteration and a
binary-heap shortest-path search) used to validate every execution mode.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graph import Graph

__all__ = [
    "INF_DIST",
    "PageRank",
    "BellmanFord",
    "PageRankL1",
    "NoUpdates",
    "pagerank_kernel",
    "bellman_ford_kernel",
    "pr_stop",
    "sssp_stop",
    "default_stop",
    "oracle_pagerank",
    "oracle_dijkstra",
]

# Unreachable-distance sentinel; additions saturate here instead of wrapping.
INF_DIST = 2**32 - 1


@dataclass(frozen=True)
class PageRank:
    """Pull PageRank: score(v) = (1-d)/n + d * sum(read(u) / out_degree(u)).

    Scores are stored as float32 and accumulated in float64. Mass arriving
    at vertices with no out-edges is not redistributed.
    """

    damping: float = 0.85

    def __post_init__(self) -> None:
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must lie in (0, 1)")


@dataclass(frozen=True)
class BellmanFord:
    """Pull single-source shortest paths over unsigned 32-bit distances."""

    source: int = 0


@dataclass(frozen=True)
class PageRankL1:
    """Stop when the summed absolute score change of a round is <= epsilon."""

    epsilon: float = 1e-4

    def fires(self, stat: float) -> bool:
        return stat <= self.epsilon


@dataclass(frozen=True)
class NoUpdates:
    """Stop when a round stores no strictly smaller distance anywhere."""

    def fires(self, stat: float) -> bool:
        return stat == 0


def pr_stop(delta: float, epsilon: float) -> bool:
    """Inclusive threshold on the round's total L1 score change."""
    return delta <= epsilon


def sssp_stop(updates: int) -> bool:
    return updates == 0


def default_stop(kernel):
    if isinstance(kernel, PageRank):
        return PageRankL1()
    if isinstance(kernel, BellmanFord):
        return NoUpdates()
    raise ValueError(f"no default stopping rule for {kernel!r}")


def pagerank_kernel(g: Graph, v: int, read, damping: float = 0.85) -> np.float32:
    """Reference single-vertex update; read(u) returns u's current score.

    Every in-neighbor has at least one out-edge (the one into v), so the
    out-degree divisor is never zero.
    """
    acc = 0.0
    for u in g.in_neighbors(v):
        acc += float(read(int(u))) / g.out_degree(int(u))
    return np.float32((1.0 - damping) / g.num_vertices + damping * acc)


def bellman_ford_kernel(g: Graph, v: int, read, source: int) -> int:
    """Reference single-vertex relaxation; returns the new distance for v."""
    if v == source:
        return 0
    best = int(read(v))
    wts = g.in_edge_weights(v)
    for u, w in zip(g.in_neighbors(v), wts):
        d = min(int(read(int(u))) + int(w), INF_DIST)
        if d < best:
            best = d
    return best


def oracle_pagerank(
    g: Graph, damping: float = 0.85, epsilon: float = 1e-10, max_iterations: int = 100_000
) -> np.ndarray:
    """Serial double-precision power iteration to an L1 tolerance of epsilon.

    Raises RuntimeError if the tolerance is not reached in max_iterations.
    """
    n = g.num_vertices
    if n == 0:
        return np.empty(0, np.float64)
    inv_deg = np.zeros(n, np.float64)
    deg = g.out_degrees()
    nz = deg > 0
    inv_deg[nz] = 1.0 / deg[nz]
    pull = sp.csr_matrix(
        (np.ones(g.num_edges, np.float64), g.in_indices, g.in_indptr), shape=(n, n)
    )
    base = (1.0 - damping) / n
    x = np.full(n, 1.0 / n, np.float64)
    for _ in range(max_iterations):
        nxt = base + damping * (pull @ (x * inv_deg))
        if np.sum(np.abs(nxt - x)) <= epsilon:
            return nxt
        x = nxt
    raise RuntimeError(f"power iteration did not reach {epsilon} in {max_iterations} iterations")


def oracle_dijkstra(g: Graph, source: int) -> np.ndarray:
    """Serial binary-heap shortest paths; exact for non-negative weights."""
    if g.weights_out is None:
        raise ValueError("shortest paths require an edge-weighted graph")
    n = g.num_vertices
    if not 0 <= source < n:
        raise IndexError(f"source {source} out of range [0, {n})")
    dist = np.full(n, INF_DIST, np.uint32)
    indptr, indices, weights = g.out_indptr, g.out_indices, g.weights_out
    dist_py = [INF_DIST] * n
    dist_py[source] = 0
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist_py[u]:
            continue
        for e in range(indptr[u], indptr[u + 1]):
            v = int(indices[e])
            nd = d + int(weights[e])
            if nd < dist_py[v]:
                dist_py[v] = nd
                heapq.heappush(heap, (nd, v))
    dist[:] = np.minimum(np.asarray(dist_py, np.int64), INF_DIST).astype(np.uint32)
    return dist
