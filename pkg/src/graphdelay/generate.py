"""Synthetic graph generators: skewed (RMAT), uniform random, and grid.

Every generator is deterministic for a given 64-bit seed. Edge lists are
returned raw (pre-dedup); feed them to :func:`graphdelay.build_graph`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GenSpec",
    "gen_rmat",
    "gen_uniform",
    "gen_grid",
    "assign_weights",
    "generate",
    "RMAT_A",
    "RMAT_B",
    "RMAT_C",
    "RMAT_D",
]

# Recursive-bisection quadrant probabilities, the Graph500 convention.
RMAT_A, RMAT_B, RMAT_C, RMAT_D = 0.57, 0.19, 0.19, 0.05

_MAX_SCALE = 30


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one generated graph.

    family is one of 'rmat', 'uniform', 'grid'. For rmat/uniform the vertex
    count is 2**scale and edge_factor * 2**scale edges are sampled before
    deduplication. Grids use rows x cols and ignore scale/edge_factor.
    weight_range of (lo, hi) attaches uniform integer weights; None leaves
    the graph unweighted.
    """

    family: str
    scale: int = 0
    edge_factor: int = 16
    rows: int = 0
    cols: int = 0
    seed: int = 1
    weight_range: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.family not in ("rmat", "uniform", "grid"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "grid":
            if self.rows < 1 or self.cols < 1:
                raise ValueError("grid requires rows >= 1 and cols >= 1")
        else:
            if self.scale < 1:
                raise ValueError("scale must be >= 1")
            if self.scale > _MAX_SCALE:
                raise ValueError(f"scale {self.scale} too large (max {_MAX_SCALE})")
            if self.edge_factor < 1:
                raise ValueError("edge_factor must be >= 1")
        if self.weight_range is not None:
            lo, hi = self.weight_range
            if not 0 <= lo <= hi <= 2**32 - 1:
                raise ValueError("weight_range must satisfy 0 <= lo <= hi < 2^32")

    @property
    def num_vertices(self) -> int:
        if self.family == "grid":
            return self.rows * self.cols
        return 1 << self.scale

    def describe(self) -> str:
        if self.family == "grid":
            base = f"grid-{self.rows}x{self.cols}-s{self.seed}"
        else:
            base = f"{self.family}-{self.scale}-{self.edge_factor}-s{self.seed}"
        if self.weight_range is not None:
            base += f"-w{self.weight_range[0]}:{self.weight_range[1]}"
        return base


def _rng(seed: int) -> np.random.Generator:
    # Philox is counter based, so streams are reproducible and cheap to fork.
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)))


def gen_rmat(spec: GenSpec) -> np.ndarray:
    """Sample a skewed (heavy-tailed) edge list by recursive bisection.

    Returns an (E, 2) or (E, 3) int64 array with E = edge_factor * 2**scale.
    """
    if spec.family != "rmat":
        raise ValueError("spec.family must be 'rmat'")
    rng = _rng(spec.seed)
    n_edges = spec.edge_factor << spec.scale
    src = np.zeros(n_edges, np.int64)
    dst = np.zeros(n_edges, np.int64)
    ab = RMAT_A + RMAT_B
    abc = ab + RMAT_C
    for _ in range(spec.scale):
        r = rng.random(n_edges)
        src_bit = r >= ab                      # quadrant c or d
        dst_bit = ((r >= RMAT_A) & (r < ab)) | (r >= abc)  # quadrant b or d
        src = (src << 1) | src_bit
        dst = (dst << 1) | dst_bit
    return _with_weights(src, dst, spec)


def gen_uniform(spec: GenSpec) -> np.ndarray:
    """Sample edge_factor * 2**scale edges with both endpoints uniform."""
    if spec.family != "uniform":
        raise ValueError("spec.family must be 'uniform'")
    rng = _rng(spec.seed)
    n = 1 << spec.scale
    n_edges = spec.edge_factor << spec.scale
    src = rng.integers(0, n, size=n_edges, dtype=np.int64)
    dst = rng.integers(0, n, size=n_edges, dtype=np.int64)
    return _with_weights(src, dst, spec)


def gen_grid(rows: int, cols: int, spec: GenSpec) -> np.ndarray:
    """4-connected rows x cols lattice, every edge in both directions.

    Vertex (r, c) has id r * cols + c. Both directions of a lattice edge get
    the same weight when spec.weight_range is set.
    """
    if rows < 1 or cols < 1:
        raise ValueError("grid requires rows >= 1 and cols >= 1")
    ids = np.arange(rows * cols, dtype=np.int64).reshape(rows, cols)
    right = np.stack([ids[:, :-1].ravel(), ids[:, 1:].ravel()], axis=1)
    down = np.stack([ids[:-1, :].ravel(), ids[1:, :].ravel()], axis=1)
    fwd = np.concatenate([right, down], axis=0)
    edges = np.concatenate([fwd, fwd[:, ::-1]], axis=0)
    return _with_weights(edges[:, 0], edges[:, 1], spec)


def _with_weights(src: np.ndarray, dst: np.ndarray, spec: GenSpec) -> np.ndarray:
    edges = np.stack([src, dst], axis=1)
    if spec.weight_range is None:
        return edges
    return assign_weights(edges, spec.seed, spec.weight_range)


def _splitmix64(x: np.ndarray) -> np.ndarray:
    # Standard 64-bit finalizer; wrapping arithmetic intended throughout.
    with np.errstate(over="ignore"):
        z = (x + np.uint64(0x9E3779B97F4A7C15)).astype(np.uint64)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return z ^ (z >> np.uint64(31))


def assign_weights(edges, seed: int, weight_range: tuple[int, int]) -> np.ndarray:
    """Attach a deterministic uniform integer weight to every edge.

    The weight is a pure function of (seed, {u, v}), so the two directions
    of a symmetrized edge always receive the same weight and repeated calls
    reproduce the same assignment.
    """
    lo, hi = weight_range
    if not 0 <= lo <= hi <= 2**32 - 1:
        raise ValueError("weight_range must satisfy 0 <= lo <= hi < 2^32")
    arr = np.asarray(edges, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] < 2:
        raise ValueError("edges must be an (m, >=2) array")
    u = arr[:, 0].astype(np.uint64)
    v = arr[:, 1].astype(np.uint64)
    a, b = np.minimum(u, v), np.maximum(u, v)
    with np.errstate(over="ignore"):
        key = (a << np.uint64(32)) ^ b
        key = _splitmix64(key ^ _splitmix64(np.uint64(seed) + np.zeros_like(key)))
    span = np.uint64(hi - lo + 1)
    w = (lo + (key % span)).astype(np.int64)
    return np.concatenate([arr[:, :2], w[:, None]], axis=1)


def generate(spec: GenSpec) -> np.ndarray:
    """Dispatch on spec.family."""
    if spec.family == "rmat":
        return gen_rmat(spec)
    if spec.family == "uniform":
        return gen_uniform(spec)
    return gen_grid(spec.rows, spec.cols, spec)
