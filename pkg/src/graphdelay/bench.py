"""Benchmark sweeps and their CSV result format.

A sweep executes the cartesian product of (mode or delta) x threads x trials
sequentially (timing fidelity wants an otherwise idle machine), records one
row per trial, and writes a companion summary with per-configuration means
and speedups against the synchronous and asynchronous baselines.
"""
from __future__ import annotations

import csv as _csv
from dataclasses import dataclass

import numpy as np

from .algorithms import BellmanFord, NoUpdates, PageRank, PageRankL1
from .engine import Asynchronous, Delayed, Mode, ReadPolicy, Synchronous, run
from .generate import GenSpec, generate
from .graph import Graph, build_graph
from .io import read_binary

__all__ = [
    "RESULTS_HEADER",
    "DEFAULT_DELTAS",
    "ResultRow",
    "SweepSpec",
    "run_sweep",
    "write_results_csv",
    "read_results_csv",
    "summarize",
    "write_summary_csv",
    "summary_path_for",
]

RESULTS_HEADER = [
    "graph",
    "algorithm",
    "mode",
    "delta",
    "threads",
    "read_policy",
    "trial",
    "rounds",
    "total_seconds",
    "avg_round_seconds",
    "converged",
]

SUMMARY_HEADER = [
    "graph",
    "algorithm",
    "mode",
    "delta",
    "threads",
    "read_policy",
    "trials",
    "mean_total_seconds",
    "min_total_seconds",
    "mean_rounds",
    "speedup_vs_sync",
    "speedup_vs_async",
]

# Power-of-two buffer capacities, one cache line up to half a megabyte.
DEFAULT_DELTAS = tuple(16 << i for i in range(12))  # 16 .. 32768


def _mode_name(mode: Mode) -> str:
    if isinstance(mode, Synchronous):
        return "sync"
    if isinstance(mode, Asynchronous):
        return "async"
    return "delayed"


@dataclass(frozen=True)
class ResultRow:
    """One trial of one configuration, as serialized in the results CSV."""

    graph: str
    algorithm: str
    mode: str
    delta: int | None
    threads: int
    read_policy: str
    trial: int
    rounds: int
    total_seconds: float
    avg_round_seconds: float
    converged: bool

    def to_fields(self) -> list[str]:
        return [
            self.graph,
            self.algorithm,
            self.mode,
            "" if self.delta is None else str(self.delta),
            str(self.threads),
            self.read_policy,
            str(self.trial),
            str(self.rounds),
            f"{self.total_seconds:.6f}",
            f"{self.avg_round_seconds:.6f}",
            "true" if self.converged else "false",
        ]

    @classmethod
    def from_fields(cls, fields: list[str]) -> "ResultRow":
        if len(fields) != len(RESULTS_HEADER):
            raise ValueError(f"expected {len(RESULTS_HEADER)} fields, got {len(fields)}")
        return cls(
            graph=fields[0],
            algorithm=fields[1],
            mode=fields[2],
            delta=None if fields[3] == "" else int(fields[3]),
            threads=int(fields[4]),
            read_policy=fields[5],
            trial=int(fields[6]),
            rounds=int(fields[7]),
            total_seconds=float(fields[8]),
            avg_round_seconds=float(fields[9]),
            converged={"true": True, "false": False}[fields[10]],
        )


def _result_row(graph_label: str, algorithm: str, mode: Mode, threads: int,
                read_policy: ReadPolicy, trial: int, result) -> ResultRow:
    # avg is quantized to 6 digits first and the total derived from it, so the
    # emitted identity avg * rounds == total survives the fixed-point format.
    rounds = result.rounds
    true_total = sum(result.per_round_seconds)
    avg = round(true_total / rounds, 6) if rounds else 0.0
    return ResultRow(
        graph=graph_label,
        algorithm=algorithm,
        mode=_mode_name(mode),
        delta=mode.delta if isinstance(mode, Delayed) else None,
        threads=threads,
        read_policy=read_policy.value,
        trial=trial,
        rounds=rounds,
        total_seconds=round(avg * rounds, 6),
        avg_round_seconds=avg,
        converged=result.converged,
    )


def _failure_row(graph_label: str, algorithm: str, mode: Mode, threads: int,
                 read_policy: ReadPolicy, trial: int) -> ResultRow:
    return ResultRow(
        graph=graph_label,
        algorithm=algorithm,
        mode=_mode_name(mode),
        delta=mode.delta if isinstance(mode, Delayed) else None,
        threads=threads,
        read_policy=read_policy.value,
        trial=trial,
        rounds=0,
        total_seconds=0.0,
        avg_round_seconds=0.0,
        converged=False,
    )


def write_results_csv(rows, path) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = _csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULTS_HEADER)
        for row in rows:
            writer.writerow(row.to_fields())


def read_results_csv(path) -> list[ResultRow]:
    with open(path, "r", newline="", encoding="ascii") as fh:
        reader = _csv.reader(fh)
        header = next(reader, None)
        if header != RESULTS_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        return [ResultRow.from_fields(fields) for fields in reader]


@dataclass(frozen=True)
class SweepSpec:
    """Everything one benchmark sweep needs.

    graph_source is a binary graph path or a GenSpec. modes holds engine
    mode instances; the default is sync, async, and one Delayed per delta
    in DEFAULT_DELTAS. Every (mode, threads) pair runs `trials` times.
    """

    graph_source: str | GenSpec
    algorithm: str
    threads: tuple[int, ...] = (1, 2, 4, 8)
    modes: tuple[Mode, ...] = ()
    trials: int = 3
    source: int = 0
    epsilon: float = 1e-4
    max_iterations: int = 1000
    out_path: str = "results.csv"

    def __post_init__(self) -> None:
        if self.algorithm not in ("pagerank", "sssp"):
            raise ValueError(f"algorithm must be 'pagerank' or 'sssp', got {self.algorithm!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.threads or any(t < 1 for t in self.threads):
            raise ValueError("threads must be a non-empty list of positive counts")
        if not self.modes:
            object.__setattr__(
                self,
                "modes",
                (Synchronous(), Asynchronous()) + tuple(Delayed(d) for d in DEFAULT_DELTAS),
            )

    def graph_label(self) -> str:
        if isinstance(self.graph_source, GenSpec):
            return self.graph_source.describe()
        return str(self.graph_source)

    def load_graph(self) -> Graph:
        if isinstance(self.graph_source, GenSpec):
            edges = generate(self.graph_source)
            return build_graph(edges, self.graph_source.num_vertices)
        return read_binary(self.graph_source)


def _kernel_and_stop(spec: SweepSpec):
    if spec.algorithm == "pagerank":
        return PageRank(), PageRankL1(spec.epsilon)
    return BellmanFord(source=spec.source), NoUpdates()


def run_sweep(spec: SweepSpec, write: bool = True) -> list[ResultRow]:
    """Execute the sweep; returns all rows (failures included as rows)."""
    g = spec.load_graph()
    label = spec.graph_label()
    kernel, stop = _kernel_and_stop(spec)
    policy = ReadPolicy.GLOBAL_ONLY
    rows: list[ResultRow] = []
    for mode in spec.modes:
        for t in spec.threads:
            for trial in range(1, spec.trials + 1):
                try:
                    result = run(
                        g, kernel, mode, t,
                        read_policy=policy,
                        stop=stop,
                        max_iterations=spec.max_iterations,
                    )
                    rows.append(_result_row(label, spec.algorithm, mode, t, policy, trial, result))
                except Exception:
                    rows.append(_failure_row(label, spec.algorithm, mode, t, policy, trial))
    if write:
        write_results_csv(rows, spec.out_path)
        write_summary_csv(summarize(rows), summary_path_for(spec.out_path))
    return rows


def summary_path_for(results_path) -> str:
    text = str(results_path)
    if text.endswith(".csv"):
        return text[:-4] + ".summary.csv"
    return text + ".summary.csv"


@dataclass(frozen=True)
class SummaryRow:
    graph: str
    algorithm: str
    mode: str
    delta: int | None
    threads: int
    read_policy: str
    trials: int
    mean_total_seconds: float
    min_total_seconds: float
    mean_rounds: float
    speedup_vs_sync: float | None
    speedup_vs_async: float | None

    def to_fields(self) -> list[str]:
        fmt = lambda x: "" if x is None else f"{x:.6f}"  # noqa: E731
        return [
            self.graph,
            self.algorithm,
            self.mode,
            "" if self.delta is None else str(self.delta),
            str(self.threads),
            self.read_policy,
            str(self.trials),
            f"{self.mean_total_seconds:.6f}",
            f"{self.min_total_seconds:.6f}",
            f"{self.mean_rounds:.6f}",
            fmt(self.speedup_vs_sync),
            fmt(self.speedup_vs_async),
        ]


def summarize(rows: list[ResultRow]) -> list[SummaryRow]:
    """Per-configuration means over successful trials, plus mode speedups."""
    groups: dict[tuple, list[ResultRow]] = {}
    order: list[tuple] = []
    for row in rows:
        key = (row.graph, row.algorithm, row.mode, row.delta, row.threads, row.read_policy)
        if key not in groups:
            groups[key] = []
            order.append(key)
        if row.rounds > 0:  # failed trials carry rounds=0 and are excluded
            groups[key].append(row)

    def mean_total(graph, algorithm, mode_name, threads, policy) -> float | None:
        key = (graph, algorithm, mode_name, None, threads, policy)
        ok = groups.get(key, [])
        if not ok:
            return None
        return float(np.mean([r.total_seconds for r in ok]))

    out: list[SummaryRow] = []
    for key in order:
        graph, algorithm, mode_name, delta, threads, policy = key
        ok = groups[key]
        if not ok:
            out.append(SummaryRow(graph, algorithm, mode_name, delta, threads, policy,
                                  0, 0.0, 0.0, 0.0, None, None))
            continue
        mean_t = float(np.mean([r.total_seconds for r in ok]))
        min_t = float(np.min([r.total_seconds for r in ok]))
        mean_rounds = float(np.mean([r.rounds for r in ok]))
        sync_t = mean_total(graph, algorithm, "sync", threads, policy)
        async_t = mean_total(graph, algorithm, "async", threads, policy)
        speed_sync = (sync_t / mean_t) if (sync_t and mean_t > 0) else None
        speed_async = (async_t / mean_t) if (async_t and mean_t > 0) else None
        out.append(SummaryRow(graph, algorithm, mode_name, delta, threads, policy,
                              len(ok), mean_t, min_t, mean_rounds, speed_sync, speed_async))
    return out


def write_summary_csv(rows: list[SummaryRow], path) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = _csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        for row in rows:
            writer.writerow(row.to_fields())
