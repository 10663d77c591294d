"""Static communication instrumentation and run accounting.

The access matrix counts, for a given partition, how many pull reads each
worker's block makes from each worker's block: M[i][j] is the number of
in-edges (u -> v) with owner(v) = i and owner(u) = j. It is an exact static
count over the edge set, independent of execution order.
"""
from __future__ import annotations

import csv as _csv
from dataclasses import dataclass

import numpy as np

from .engine import Delayed, RunResult, Synchronous
from .graph import Graph
from .partition import Partition, owners

__all__ = [
    "AccessMatrix",
    "LocalityReport",
    "FlushSummary",
    "access_matrix",
    "locality_report",
    "flush_accounting",
    "write_access_csv",
    "read_access_csv",
]


@dataclass(frozen=True)
class AccessMatrix:
    """T x T read counts; rows are reading workers, columns are owners."""

    counts: np.ndarray

    @property
    def num_workers(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class LocalityReport:
    """Per-worker self-read fractions plus the aggregate diagonal share.

    ``flagged[i]`` marks rows whose self-fraction reaches 1/T, the share a
    uniformly spread access pattern would give its own block.
    """

    self_fraction: np.ndarray
    flagged: np.ndarray
    diagonal_fraction: float


@dataclass(frozen=True)
class FlushSummary:
    """Rounds, mean round time, and per-worker flush activity for one run."""

    rounds: int
    avg_round_seconds: float
    total_flushes: list[int]
    flushes_per_round: list[float]


def access_matrix(g: Graph, p: Partition) -> AccessMatrix:
    """Exact static count of cross-block pull reads for partition p."""
    if int(p.boundaries[-1]) != g.num_vertices:
        raise ValueError(
            f"partition covers {int(p.boundaries[-1])} vertices, graph has {g.num_vertices}"
        )
    t = p.num_workers
    if g.num_edges == 0:
        return AccessMatrix(np.zeros((t, t), np.int64))
    owner = owners(p, np.arange(g.num_vertices, dtype=np.int64))
    reader = np.repeat(owner, g.in_degrees())
    owned = owner[g.in_indices]
    counts = np.bincount(reader * t + owned, minlength=t * t).reshape(t, t)
    return AccessMatrix(counts.astype(np.int64))


def locality_report(m: AccessMatrix) -> LocalityReport:
    t = m.num_workers
    row_sums = m.counts.sum(axis=1)
    diag = np.diagonal(m.counts)
    frac = np.where(row_sums > 0, diag / np.maximum(row_sums, 1), 0.0)
    flagged = frac >= (1.0 / t)
    total = m.total
    diagonal_fraction = float(diag.sum() / total) if total else 0.0
    return LocalityReport(
        self_fraction=frac, flagged=flagged, diagonal_fraction=diagonal_fraction
    )


def flush_accounting(result: RunResult) -> FlushSummary:
    """Summarize a run's flush behavior.

    Delayed runs report the real buffer flush counts. Synchronous rounds
    each publish one whole-block write at the barrier, counted as one
    flush-equivalent per worker per round; Asynchronous runs stage nothing.
    """
    rounds = result.rounds
    if isinstance(result.mode, Delayed):
        totals = list(result.total_flushes)
    elif isinstance(result.mode, Synchronous):
        totals = [rounds] * result.threads
    else:
        totals = [0] * result.threads
    per_round = [t / rounds if rounds else 0.0 for t in totals]
    return FlushSummary(
        rounds=rounds,
        avg_round_seconds=result.avg_round_seconds,
        total_flushes=totals,
        flushes_per_round=per_round,
    )


def write_access_csv(m: AccessMatrix, path) -> None:
    """Row-major counts with a header row of worker ids."""
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = _csv.writer(fh)
        writer.writerow(range(m.num_workers))
        for row in m.counts:
            writer.writerow(int(x) for x in row)


def read_access_csv(path) -> AccessMatrix:
    with open(path, "r", newline="", encoding="ascii") as fh:
        rows = list(_csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty access matrix file")
    data = np.asarray([[int(x) for x in row] for row in rows[1:]], np.int64)
    t = len(rows[0])
    if data.shape != (t, t):
        raise ValueError(f"{path}: expected a {t}x{t} matrix, got {data.shape}")
    return AccessMatrix(data)
