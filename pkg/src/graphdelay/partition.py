"""Static contiguous vertex partition balanced by aggregate in-degree.

Pull kernels do one unit of work per in-edge, so blocks are cut greedily:
block i closes at the first vertex where the cumulative in-degree reaches
(i + 1) * m / T. Comparisons are done in integers (T * cum >= (i + 1) * m)
so ties are exact: a vertex that lands on the target closes its block.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = ["Partition", "partition_by_indegree", "owner_of", "owners", "block_loads"]


@dataclass(frozen=True)
class Partition:
    """T + 1 non-decreasing block boundaries; worker i owns [b[i], b[i+1])."""

    boundaries: np.ndarray

    @property
    def num_workers(self) -> int:
        return len(self.boundaries) - 1

    def block(self, i: int) -> tuple[int, int]:
        if not 0 <= i < self.num_workers:
            raise IndexError(f"worker {i} out of range [0, {self.num_workers})")
        return int(self.boundaries[i]), int(self.boundaries[i + 1])

    def block_sizes(self) -> np.ndarray:
        return np.diff(self.boundaries)


def partition_by_indegree(g: Graph, num_workers: int) -> Partition:
    """Cut [0, n) into num_workers contiguous blocks of near-equal in-edge load.

    Zero-edge graphs fall back to an equal vertex-count split. Every worker
    receives a block, possibly empty.
    """
    if num_workers < 1:
        raise ValueError("num_workers must be >= 1")
    n, m, t = g.num_vertices, g.num_edges, num_workers
    boundaries = np.zeros(t + 1, np.int64)
    if m == 0:
        boundaries[:] = [(i * n) // t for i in range(t + 1)]
        boundaries.flags.writeable = False
        return Partition(boundaries)
    cum = np.cumsum(g.in_degrees(), dtype=np.int64)
    # First vertex v with t * cum[v] >= (i + 1) * m closes block i (inclusive).
    targets = np.arange(1, t, dtype=np.int64) * m
    cuts = np.searchsorted(cum * t, targets, side="left") + 1
    boundaries[1:t] = np.minimum(cuts, n)
    boundaries[t] = n
    boundaries.flags.writeable = False
    return Partition(boundaries)


def owner_of(p: Partition, v: int) -> int:
    """Worker whose block contains vertex v (binary search)."""
    n = int(p.boundaries[-1])
    if not 0 <= v < n:
        raise IndexError(f"vertex {v} out of range [0, {n})")
    return int(np.searchsorted(p.boundaries, v, side="right")) - 1


def owners(p: Partition, vertices: np.ndarray) -> np.ndarray:
    """Vectorized owner_of over an id array (no bounds check)."""
    return np.searchsorted(p.boundaries, vertices, side="right") - 1


def block_loads(g: Graph, p: Partition) -> np.ndarray:
    """Aggregate in-degree per block."""
    cum = np.concatenate([[0], np.cumsum(g.in_degrees(), dtype=np.int64)])
    b = p.boundaries
    return cum[b[1:]] - cum[b[:-1]]
