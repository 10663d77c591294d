"""On-disk graph formats.

Text edge lists: one ``src dst`` or ``src dst weight`` line per edge,
``#`` starts a comment line, arity must be consistent across the file.

Binary format (little endian, magic ``DFG1``):

======  =============  =========================================
offset  type           field
======  =============  =========================================
0       char[4]        magic ``DFG1``
4       u64            num_vertices n
12      u64            num_edges m
20      u8             flags: bit0 weighted, bit1 symmetric
21      u64 * (n + 1)  out-CSR offsets
...     u32 * m        out-CSR adjacency
...     u32 * m        out-edge weights (present iff bit0 set)
======  =============  =========================================

The in-CSR is reconstructed on load, so a round trip is bit-exact.
"""
from __future__ import annotations

import warnings

import numpy as np

from .graph import Graph, build_graph

__all__ = [
    "GraphFormatError",
    "read_edge_list",
    "write_edge_list",
    "read_binary",
    "write_binary",
    "MAGIC",
]

MAGIC = b"DFG1"
_FLAG_WEIGHTED = 0x01
_FLAG_SYMMETRIC = 0x02


class GraphFormatError(ValueError):
    """Raised for malformed edge-list or binary graph files."""


def read_edge_list(path) -> tuple[np.ndarray, int]:
    """Parse a text edge list.

    Returns (edges, num_vertices) where edges is an (m, 2) or (m, 3) int64
    array and num_vertices is 1 + the largest id seen. An empty file yields
    zero vertices and a warning.
    """
    rows: list[list[int]] = []
    arity = 0
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            fields = stripped.split()
            if len(fields) not in (2, 3):
                raise GraphFormatError(
                    f"{path}: line {lineno}: expected 2 or 3 fields, got {len(fields)}"
                )
            if arity == 0:
                arity = len(fields)
            elif len(fields) != arity:
                raise GraphFormatError(
                    f"{path}: line {lineno}: inconsistent arity "
                    f"({len(fields)} fields after seeing {arity})"
                )
            try:
                rows.append([int(f) for f in fields])
            except ValueError as exc:
                raise GraphFormatError(f"{path}: line {lineno}: {exc}") from None
    if not rows:
        warnings.warn(f"{path}: empty edge list", stacklevel=2)
        return np.empty((0, 2), np.int64), 0
    edges = np.asarray(rows, dtype=np.int64)
    num_vertices = int(edges[:, :2].max()) + 1
    return edges, num_vertices


def write_edge_list(edges, path) -> None:
    """Write edges as ``src dst[ weight]`` lines."""
    arr = np.asarray(edges, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] not in (2, 3):
        raise ValueError("edges must be an (m, 2) or (m, 3) array")
    with open(path, "w", encoding="ascii") as fh:
        for row in arr:
            fh.write(" ".join(str(int(x)) for x in row))
            fh.write("\n")


def write_binary(g: Graph, path) -> None:
    """Serialize a Graph in the binary format documented above."""
    flags = 0
    if g.weighted:
        flags |= _FLAG_WEIGHTED
    if g.symmetric:
        flags |= _FLAG_SYMMETRIC
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(np.array([g.num_vertices, g.num_edges], dtype="<u8").tobytes())
        fh.write(np.array([flags], dtype="u1").tobytes())
        fh.write(g.out_indptr.astype("<u8").tobytes())
        fh.write(g.out_indices.astype("<u4").tobytes())
        if g.weighted:
            fh.write(g.weights_out.astype("<u4").tobytes())


def _take(buf: bytes, offset: int, nbytes: int, what: str, path) -> tuple[bytes, int]:
    end = offset + nbytes
    if end > len(buf):
        raise GraphFormatError(
            f"{path}: truncated {what}: expected {end} bytes, file has {len(buf)}"
        )
    return buf[offset:end], end


def read_binary(path) -> Graph:
    """Load a binary graph and rebuild its in-CSR; validates all invariants."""
    with open(path, "rb") as fh:
        buf = fh.read()
    magic, off = _take(buf, 0, 4, "magic", path)
    if magic != MAGIC:
        raise GraphFormatError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
    header, off = _take(buf, off, 17, "header", path)
    n, m = (int(x) for x in np.frombuffer(header[:16], dtype="<u8"))
    flags = header[16]
    weighted = bool(flags & _FLAG_WEIGHTED)
    symmetric = bool(flags & _FLAG_SYMMETRIC)

    raw, off = _take(buf, off, 8 * (n + 1), "offset table", path)
    indptr = np.frombuffer(raw, dtype="<u8").astype(np.int64)
    raw, off = _take(buf, off, 4 * m, "adjacency", path)
    indices = np.frombuffer(raw, dtype="<u4").astype(np.int64)
    weights = None
    if weighted:
        raw, off = _take(buf, off, 4 * m, "weights", path)
        weights = np.frombuffer(raw, dtype="<u4").astype(np.int64)
    if off != len(buf):
        raise GraphFormatError(f"{path}: {len(buf) - off} trailing bytes after graph data")

    if indptr[0] != 0 or indptr[-1] != m or np.any(np.diff(indptr) < 0):
        raise GraphFormatError(f"{path}: offset table is not a valid CSR index")
    if m and (indices.min() < 0 or indices.max() >= n):
        raise GraphFormatError(f"{path}: adjacency id out of range [0, {n})")

    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    if m:
        same_row = src[1:] == src[:-1]
        if np.any(same_row & (indices[1:] <= indices[:-1])):
            raise GraphFormatError(f"{path}: neighbor lists must be sorted and duplicate-free")
    edges = (src, indices) if weights is None else (src, indices, weights)
    g = build_graph(edges, n)
    if symmetric and not g.symmetric:
        raise GraphFormatError(f"{path}: symmetric flag set but edges are not mirrored")
    return g
