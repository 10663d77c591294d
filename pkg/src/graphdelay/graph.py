"""Directed graph container with both adjacency directions in CSR form.

Pull-style kernels iterate a vertex's in-neighbors, so the transposed
adjacency (in-CSR) is first-class here, with per-in-edge weights kept
parallel to it. All arrays are immutable after construction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Graph", "build_graph", "transpose", "MAX_WEIGHT"]

# Weights are 32-bit unsigned by contract (the distance domain is u32).
MAX_WEIGHT = 2**32 - 1


@dataclass(eq=False)
class Graph:
    """CSR adjacency in both directions plus optional edge weights.

    ``out_indptr``/``out_indices`` hold forward edges grouped by source;
    ``in_indptr``/``in_indices`` hold the same edges grouped by destination.
    ``weights_out``/``weights_in`` are parallel to the respective index
    arrays (``None`` for unweighted graphs). Neighbor lists are sorted and
    duplicate-free.
    """

    num_vertices: int
    num_edges: int
    out_indptr: np.ndarray
    out_indices: np.ndarray
    in_indptr: np.ndarray
    in_indices: np.ndarray
    weights_out: np.ndarray | None = None
    weights_in: np.ndarray | None = None
    symmetric: bool = False

    @property
    def weighted(self) -> bool:
        return self.weights_in is not None

    def out_degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self.out_indptr[v + 1] - self.out_indptr[v])

    def in_degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self.in_indptr[v + 1] - self.in_indptr[v])

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.out_indptr)

    def in_degrees(self) -> np.ndarray:
        return np.diff(self.in_indptr)

    def out_neighbors(self, v: int) -> np.ndarray:
        self._check_vertex(v)
        return self.out_indices[self.out_indptr[v] : self.out_indptr[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        self._check_vertex(v)
        return self.in_indices[self.in_indptr[v] : self.in_indptr[v + 1]]

    def in_edge_weights(self, v: int) -> np.ndarray:
        if self.weights_in is None:
            raise ValueError("graph is unweighted")
        self._check_vertex(v)
        return self.weights_in[self.in_indptr[v] : self.in_indptr[v + 1]]

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.num_vertices:
            raise IndexError(f"vertex {v} out of range [0, {self.num_vertices})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        if (self.num_vertices, self.num_edges, self.symmetric) != (
            other.num_vertices,
            other.num_edges,
            other.symmetric,
        ):
            return False
        if self.weighted != other.weighted:
            return False
        same = (
            np.array_equal(self.out_indptr, other.out_indptr)
            and np.array_equal(self.out_indices, other.out_indices)
            and np.array_equal(self.in_indptr, other.in_indptr)
            and np.array_equal(self.in_indices, other.in_indices)
        )
        if same and self.weighted:
            same = np.array_equal(self.weights_out, other.weights_out) and np.array_equal(
                self.weights_in, other.weights_in
            )
        return same


def _freeze(*arrays: np.ndarray | None) -> None:
    for a in arrays:
        if a is not None:
            a.flags.writeable = False


def _normalize_edges(edges) -> tuple[np.ndarray, np.ndarray, np.ndarray | None]:
    """Coerce an edge list into (src, dst, weights-or-None) int64 arrays."""
    if isinstance(edges, np.ndarray):
        if edges.ndim != 2 or edges.shape[1] not in (2, 3):
            raise ValueError("edge array must have shape (m, 2) or (m, 3)")
        arr = edges.astype(np.int64, copy=False)
        src, dst = arr[:, 0].copy(), arr[:, 1].copy()
        w = arr[:, 2].copy() if arr.shape[1] == 3 else None
        return src, dst, w
    if isinstance(edges, tuple) and len(edges) in (2, 3) and isinstance(edges[0], np.ndarray):
        src = edges[0].astype(np.int64)
        dst = edges[1].astype(np.int64)
        w = edges[2].astype(np.int64) if len(edges) == 3 else None
        if src.shape != dst.shape or (w is not None and w.shape != src.shape):
            raise ValueError("edge component arrays must have equal length")
        return src, dst, w

    edges = list(edges)
    if not edges:
        return np.empty(0, np.int64), np.empty(0, np.int64), None
    arity = len(edges[0])
    for i, e in enumerate(edges):
        if len(e) != arity:
            raise ValueError(f"mixed weighted/unweighted edges: edge {i} has {len(e)} fields, expected {arity}")
    arr = np.asarray(edges, dtype=np.int64)
    return _normalize_edges(arr)


def _csr_from_edges(
    key: np.ndarray, other: np.ndarray, w: np.ndarray | None, n: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray | None]:
    """Group edges by ``key`` (assumed sorted by (key, other)) into CSR."""
    counts = np.bincount(key, minlength=n)
    indptr = np.zeros(n + 1, np.int64)
    np.cumsum(counts, out=indptr[1:])
    indices = other.astype(np.int32)
    weights = w.copy() if w is not None else None
    return indptr, indices, weights


def build_graph(edges, num_vertices: int, symmetrize: bool = False) -> Graph:
    """Construct a Graph from an edge list.

    Parameters
    ----------
    edges : sequence of (src, dst) or (src, dst, weight) tuples, an (m, 2|3)
        integer array, or a (src, dst[, weight]) tuple of arrays.
    num_vertices : vertex-id domain; every id must lie in [0, num_vertices).
    symmetrize : if true, add the reverse of every edge (carrying the same
        weight) before deduplication.

    Duplicate (src, dst) pairs collapse to one edge keeping the minimum
    weight. Self loops are allowed. Raises ValueError for out-of-range ids,
    mixed arity, or weights outside the 32-bit unsigned domain.
    """
    if num_vertices < 0:
        raise ValueError("num_vertices must be non-negative")
    src, dst, w = _normalize_edges(edges)
    n = int(num_vertices)
    if src.size:
        lo = min(src.min(), dst.min())
        hi = max(src.max(), dst.max())
        if lo < 0 or hi >= n:
            bad = int(lo if lo < 0 else hi)
            raise ValueError(f"vertex id {bad} out of range [0, {n})")
    if w is not None and w.size and (w.min() < 0 or w.max() > MAX_WEIGHT):
        raise ValueError("edge weights must lie in [0, 2^32 - 1]")

    if symmetrize and src.size:
        src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
        if w is not None:
            w = np.concatenate([w, w])

    # Sort by (src, dst, weight); the first row of each (src, dst) group then
    # carries the minimum weight, so deduplication is a mask.
    if src.size:
        order = np.lexsort((w, dst, src)) if w is not None else np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        if w is not None:
            w = w[order]
        keep = np.empty(src.size, bool)
        keep[0] = True
        keep[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
        src, dst = src[keep], dst[keep]
        if w is not None:
            w = w[keep]

    m = int(src.size)
    out_indptr, out_indices, weights_out = _csr_from_edges(src, dst, w, n)

    # Transposed direction: re-sort the same edges by (dst, src).
    order = np.lexsort((src, dst))
    in_indptr, in_indices, weights_in = _csr_from_edges(
        dst[order], src[order], w[order] if w is not None else None, n
    )

    symmetric = bool(symmetrize) or _is_symmetric(
        out_indptr, out_indices, weights_out, in_indptr, in_indices, weights_in
    )
    g = Graph(
        num_vertices=n,
        num_edges=m,
        out_indptr=out_indptr,
        out_indices=out_indices,
        in_indptr=in_indptr,
        in_indices=in_indices,
        weights_out=weights_out,
        weights_in=weights_in,
        symmetric=symmetric,
    )
    _freeze(out_indptr, out_indices, in_indptr, in_indices, weights_out, weights_in)
    return g


def _is_symmetric(out_indptr, out_indices, weights_out, in_indptr, in_indices, weights_in) -> bool:
    # A graph mirrors every edge iff its out-CSR equals its in-CSR.
    if not (np.array_equal(out_indptr, in_indptr) and np.array_equal(out_indices, in_indices)):
        return False
    if weights_out is not None and not np.array_equal(weights_out, weights_in):
        return False
    return True


def transpose(g: Graph) -> Graph:
    """Reverse every edge. Weights follow their edge; transpose is an involution."""
    return Graph(
        num_vertices=g.num_vertices,
        num_edges=g.num_edges,
        out_indptr=g.in_indptr,
        out_indices=g.in_indices,
        in_indptr=g.out_indptr,
        in_indices=g.out_indices,
        weights_out=g.weights_in,
        weights_in=g.weights_out,
        symmetric=g.symmetric,
    )
