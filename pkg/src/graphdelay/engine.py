"""Shared-memory execution engine for pull-style iterative vertex kernels.

One call to :func:`run` spawns exactly ``threads`` workers. Each worker owns
a contiguous vertex block (cut by aggregate in-degree) and is the only
writer of those slots; reads may touch any slot. Three propagation modes:

* Synchronous: read the previous round's array, write the next one, swap at
  the round barrier.
* Asynchronous: read and write one shared array in place, so updates are
  visible mid-round.
* Delayed(delta): write into a worker-private buffer of ``delta`` 32-bit
  slots, copied to the shared array whenever full (mid-round) and once more
  after the worker has finished its block for the round.

The round barrier is a two-phase rendezvous: workers finish their block,
meet, perform any final partial flush, meet again, and a single thread then
reduces the per-worker statistics, samples the clock, evaluates the stopping
rule and (in synchronous mode) swaps the arrays. Keeping the final flush
behind the first rendezvous makes Delayed with a buffer at least as large as
every block reproduce the synchronous per-round states exactly, regardless
of thread scheduling.
"""
from __future__ import annotations

import enum
import threading
import time
from dataclasses import dataclass, field

import numpy as np

from . import _rounds
from .algorithms import (
    INF_DIST,
    BellmanFord,
    NoUpdates,
    PageRank,
    PageRankL1,
    default_stop,
)
from .graph import Graph
from .partition import Partition, partition_by_indegree

__all__ = [
    "Synchronous",
    "Asynchronous",
    "Delayed",
    "ReadPolicy",
    "RunResult",
    "run",
    "DELTA_ALIGNMENT",
]

# Buffer capacities are multiples of one 64-byte cache line of 4-byte slots.
DELTA_ALIGNMENT = 16


@dataclass(frozen=True)
class Synchronous:
    pass


@dataclass(frozen=True)
class Asynchronous:
    pass


@dataclass(frozen=True)
class Delayed:
    """Buffered mode; delta is the buffer capacity in 32-bit elements."""

    delta: int

    def __post_init__(self) -> None:
        if self.delta <= 0 or self.delta % DELTA_ALIGNMENT != 0:
            raise ValueError(
                f"delta must be a positive multiple of {DELTA_ALIGNMENT}, got {self.delta}"
            )


Mode = Synchronous | Asynchronous | Delayed


class ReadPolicy(enum.Enum):
    """Where a worker reads values that it has staged but not yet flushed."""

    GLOBAL_ONLY = "global"
    LOCAL_PREFERRED = "local-preferred"


@dataclass
class RunResult:
    """Outcome of one engine run.

    ``total_flushes[i]`` counts worker i's buffer flushes over the whole run
    (zero outside Delayed mode). ``round_values`` holds a snapshot of the
    visible value array at each round barrier when capture was requested.
    """

    rounds: int
    per_round_seconds: list[float]
    converged: bool
    final_values: np.ndarray
    total_flushes: list[int]
    mode: Mode = field(default_factory=Synchronous)
    threads: int = 1
    read_policy: ReadPolicy = ReadPolicy.GLOBAL_ONLY
    partition: Partition | None = None
    round_values: list[np.ndarray] | None = None

    @property
    def avg_round_seconds(self) -> float:
        if not self.per_round_seconds:
            return 0.0
        return sum(self.per_round_seconds) / len(self.per_round_seconds)


def _aligned_buffer(capacity: int, dtype) -> np.ndarray:
    """A capacity-element array starting on a 64-byte boundary."""
    itemsize = np.dtype(dtype).itemsize
    pad = 64 // itemsize
    raw = np.zeros(capacity + pad, dtype)
    offset = (-raw.ctypes.data % 64) // itemsize
    return raw[offset : offset + capacity]


class _RunState:
    """Mutable cross-thread state; every field is written under the barrier."""

    def __init__(self, t0: float):
        self.round_index = 0
        self.converged = False
        self.stop = False
        self.t_last = t0
        self.prev: np.ndarray | None = None
        self.curr: np.ndarray | None = None
        self.errors: list[tuple[int, BaseException]] = []
        self.err_lock = threading.Lock()


def _check_stop_rule(kernel, stop):
    if stop is None:
        return default_stop(kernel)
    ok = (isinstance(kernel, PageRank) and isinstance(stop, PageRankL1)) or (
        isinstance(kernel, BellmanFord) and isinstance(stop, NoUpdates)
    )
    if not ok:
        raise ValueError(f"stopping rule {stop!r} does not match kernel {kernel!r}")
    return stop


def run(
    g: Graph,
    kernel,
    mode: Mode,
    threads: int,
    read_policy: ReadPolicy = ReadPolicy.GLOBAL_ONLY,
    stop=None,
    max_iterations: int = 1000,
    capture_values: bool = False,
) -> RunResult:
    """Execute ``kernel`` over ``g`` until the stopping rule fires.

    Parameters
    ----------
    g : input graph; Bellman-Ford requires edge weights.
    kernel : a PageRank or BellmanFord instance.
    mode : Synchronous, Asynchronous, or Delayed(delta).
    threads : worker count; each worker gets one contiguous vertex block.
    read_policy : LOCAL_PREFERRED lets a worker read its own staged,
        unflushed values in Delayed mode; elsewhere it has no effect.
    stop : stopping rule; defaults to the kernel's standard rule.
    max_iterations : hard round cap; the result reports converged=False
        when the cap is what ended the run.
    capture_values : snapshot the visible values at every round barrier.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if max_iterations < 1:
        raise ValueError("max_iterations must be >= 1")
    if not isinstance(mode, (Synchronous, Asynchronous, Delayed)):
        raise ValueError(f"unknown mode {mode!r}")
    stop_rule = _check_stop_rule(kernel, stop)

    n = g.num_vertices
    if isinstance(kernel, PageRank):
        dtype = np.float32
        init = np.full(n, 1.0 / n if n else 0.0, np.float32)
        out_deg = g.out_degrees().astype(np.float64)
        base_score = (1.0 - kernel.damping) / n if n else 0.0
    elif isinstance(kernel, BellmanFord):
        if g.weights_in is None:
            raise ValueError("Bellman-Ford requires an edge-weighted graph")
        if n == 0 or not 0 <= kernel.source < n:
            raise IndexError(f"source {kernel.source} out of range [0, {n})")
        dtype = np.uint32
        init = np.full(n, INF_DIST, np.uint32)
        init[kernel.source] = 0
    else:
        raise ValueError(f"unknown kernel {kernel!r}")

    part = partition_by_indegree(g, threads)
    bounds = part.boundaries
    is_sync = isinstance(mode, Synchronous)
    is_delayed = isinstance(mode, Delayed)
    local_pref = read_policy is ReadPolicy.LOCAL_PREFERRED

    state = _RunState(t0=0.0)
    if is_sync:
        state.prev = init.copy()
        state.curr = np.empty_like(init)
    values = init.copy() if not is_sync else None
    buffers = (
        [_aligned_buffer(mode.delta, dtype) for _ in range(threads)] if is_delayed else None
    )

    stats: list[float] = [0.0] * threads
    flushes = [0] * threads
    per_round_seconds: list[float] = []
    snapshots: list[np.ndarray] | None = [] if capture_values else None

    def _visible_array() -> np.ndarray:
        return state.curr if is_sync else values

    def _round_action() -> None:
        total = sum(stats)
        now = time.perf_counter()
        per_round_seconds.append(now - state.t_last)
        state.t_last = now
        state.round_index += 1
        if snapshots is not None:
            snapshots.append(_visible_array().copy())
        state.converged = stop_rule.fires(total)
        state.stop = state.converged or state.round_index >= max_iterations
        if is_sync:
            state.prev, state.curr = state.curr, state.prev

    barrier_flush = threading.Barrier(threads) if is_delayed else None
    barrier_round = threading.Barrier(threads, action=_round_action)

    in_indptr, in_indices = g.in_indptr, g.in_indices
    in_weights = g.weights_in

    def _body(wid: int) -> None:
        lo, hi = int(bounds[wid]), int(bounds[wid + 1])
        buf = buffers[wid] if is_delayed else None
        while True:
            if isinstance(kernel, PageRank):
                if is_sync:
                    stat = _rounds.pr_round_sync(
                        in_indptr, in_indices, out_deg, state.prev, state.curr,
                        lo, hi, kernel.damping, base_score,
                    )
                elif is_delayed:
                    stat, nf, tail_base, tail_fill = _rounds.pr_round_delayed(
                        in_indptr, in_indices, out_deg, values, buf,
                        lo, hi, mode.delta, local_pref, kernel.damping, base_score,
                    )
                else:
                    stat = _rounds.pr_round_async(
                        in_indptr, in_indices, out_deg, values,
                        lo, hi, kernel.damping, base_score,
                    )
            else:
                if is_sync:
                    stat = _rounds.sssp_round_sync(
                        in_indptr, in_indices, in_weights, state.prev, state.curr,
                        lo, hi, kernel.source,
                    )
                elif is_delayed:
                    stat, nf, tail_base, tail_fill = _rounds.sssp_round_delayed(
                        in_indptr, in_indices, in_weights, values, buf,
                        lo, hi, mode.delta, local_pref, kernel.source,
                    )
                else:
                    stat = _rounds.sssp_round_async(
                        in_indptr, in_indices, in_weights, values,
                        lo, hi, kernel.source,
                    )
            if is_delayed:
                flushes[wid] += nf
                barrier_flush.wait()
                if tail_fill:
                    assert lo <= tail_base and tail_base + tail_fill <= hi
                    values[tail_base : tail_base + tail_fill] = buf[:tail_fill]
                    flushes[wid] += 1
            stats[wid] = stat
            barrier_round.wait()
            if state.stop:
                return

    def _worker(wid: int) -> None:
        try:
            _body(wid)
        except threading.BrokenBarrierError:
            pass  # another worker failed first; its error is recorded
        except BaseException as exc:  # noqa: BLE001 - must cross the thread boundary
            with state.err_lock:
                state.errors.append((wid, exc))
            if barrier_flush is not None:
                barrier_flush.abort()
            barrier_round.abort()

    # Compile the round loop before the clock starts so per-round timings
    # measure the graph work, not the one-off JIT cost.
    if isinstance(kernel, PageRank):
        if is_sync:
            _rounds.pr_round_sync(
                in_indptr, in_indices, out_deg, init, np.empty_like(init),
                0, 0, kernel.damping, base_score,
            )
        elif is_delayed:
            _rounds.pr_round_delayed(
                in_indptr, in_indices, out_deg, init.copy(), buffers[0],
                0, 0, mode.delta, local_pref, kernel.damping, base_score,
            )
        else:
            _rounds.pr_round_async(
                in_indptr, in_indices, out_deg, init.copy(),
                0, 0, kernel.damping, base_score,
            )
    else:
        if is_sync:
            _rounds.sssp_round_sync(
                in_indptr, in_indices, in_weights, init, np.empty_like(init),
                0, 0, kernel.source,
            )
        elif is_delayed:
            _rounds.sssp_round_delayed(
                in_indptr, in_indices, in_weights, init.copy(), buffers[0],
                0, 0, mode.delta, local_pref, kernel.source,
            )
        else:
            _rounds.sssp_round_async(
                in_indptr, in_indices, in_weights, init.copy(),
                0, 0, kernel.source,
            )

    state.t_last = time.perf_counter()
    workers = [
        threading.Thread(target=_worker, args=(wid,), name=f"graphdelay-worker-{wid}")
        for wid in range(threads)
    ]
    for t in workers:
        t.start()
    for t in workers:
        t.join()
    if state.errors:
        wid, exc = state.errors[0]
        raise RuntimeError(f"worker {wid} failed during run") from exc

    final = state.prev if is_sync else values
    return RunResult(
        rounds=state.round_index,
        per_round_seconds=per_round_seconds,
        converged=state.converged,
        final_values=final.copy(),
        total_flushes=flushes,
        mode=mode,
        threads=threads,
        read_policy=read_policy,
        partition=part,
        round_values=snapshots,
    )
