"""Compiled per-round loops shared by the engine workers.

Each function processes one worker's contiguous vertex block [lo, hi) in
ascending id order and returns that round's convergence statistic. They are
compiled nogil so worker threads overlap and stores to the shared value
array are plain machine word writes (4-byte aligned, hence untearable).

The delayed variants stage writes in a worker-private buffer and copy it to
the shared array whenever the buffer reaches its capacity. The final,
possibly partial, flush is NOT performed here; the engine does it after the
round rendezvous so that a worker's tail writes can never be observed by a
worker still computing the same round (which is what makes a buffer at
least as large as the block behave exactly like the two-array mode).
"""
from __future__ import annotations

import numpy as np
from numba import njit

INF_DIST = np.int64(2**32 - 1)

_JIT = dict(cache=True, nogil=True)


# ---------------------------------------------------------------- PageRank

@njit(**_JIT)
def pr_round_sync(in_indptr, in_indices, out_deg, prev, curr, lo, hi, damping, base_score):
    delta = 0.0
    for v in range(lo, hi):
        acc = 0.0
        for e in range(in_indptr[v], in_indptr[v + 1]):
            u = in_indices[e]
            acc += np.float64(prev[u]) / out_deg[u]
        new = np.float32(base_score + damping * acc)
        curr[v] = new
        delta += abs(np.float64(new) - np.float64(prev[v]))
    return delta


@njit(**_JIT)
def pr_round_async(in_indptr, in_indices, out_deg, values, lo, hi, damping, base_score):
    delta = 0.0
    for v in range(lo, hi):
        acc = 0.0
        for e in range(in_indptr[v], in_indptr[v + 1]):
            u = in_indices[e]
            acc += np.float64(values[u]) / out_deg[u]
        old = values[v]
        new = np.float32(base_score + damping * acc)
        values[v] = new
        delta += abs(np.float64(new) - np.float64(old))
    return delta


@njit(**_JIT)
def pr_round_delayed(
    in_indptr, in_indices, out_deg, values, buf, lo, hi, capacity, local_preferred,
    damping, base_score,
):
    delta = 0.0
    flushes = 0
    base = lo
    fill = 0
    for v in range(lo, hi):
        acc = 0.0
        for e in range(in_indptr[v], in_indptr[v + 1]):
            u = np.int64(in_indices[e])
            if local_preferred and u >= base and u < v:
                val = np.float64(buf[u - base])
            else:
                val = np.float64(values[u])
            acc += val / out_deg[u]
        old = values[v]
        new = np.float32(base_score + damping * acc)
        buf[fill] = new
        fill += 1
        delta += abs(np.float64(new) - np.float64(old))
        if fill == capacity:
            values[base : base + fill] = buf[:fill]
            flushes += 1
            base += fill
            fill = 0
    return delta, flushes, base, fill


# -------------------------------------------------------- Bellman-Ford SSSP

@njit(**_JIT)
def sssp_round_sync(in_indptr, in_indices, in_weights, prev, curr, lo, hi, source):
    updates = 0
    for v in range(lo, hi):
        if v == source:
            curr[v] = np.uint32(0)
            continue
        old = np.int64(prev[v])
        best = old
        for e in range(in_indptr[v], in_indptr[v + 1]):
            d = np.int64(prev[in_indices[e]]) + in_weights[e]
            if d > INF_DIST:
                d = INF_DIST
            if d < best:
                best = d
        curr[v] = np.uint32(best)
        if best < old:
            updates += 1
    return updates


@njit(**_JIT)
def sssp_round_async(in_indptr, in_indices, in_weights, values, lo, hi, source):
    updates = 0
    for v in range(lo, hi):
        if v == source:
            values[v] = np.uint32(0)
            continue
        old = np.int64(values[v])
        best = old
        for e in range(in_indptr[v], in_indptr[v + 1]):
            d = np.int64(values[in_indices[e]]) + in_weights[e]
            if d > INF_DIST:
                d = INF_DIST
            if d < best:
                best = d
        values[v] = np.uint32(best)
        if best < old:
            updates += 1
    return updates


@njit(**_JIT)
def sssp_round_delayed(
    in_indptr, in_indices, in_weights, values, buf, lo, hi, capacity, local_preferred, source
):
    updates = 0
    flushes = 0
    base = lo
    fill = 0
    for v in range(lo, hi):
        old = np.int64(values[v])
        if v == source:
            best = np.int64(0)
        else:
            best = old
            for e in range(in_indptr[v], in_indptr[v + 1]):
                u = np.int64(in_indices[e])
                if local_preferred and u >= base and u < v:
                    du = np.int64(buf[u - base])
                else:
                    du = np.int64(values[u])
                d = du + in_weights[e]
                if d > INF_DIST:
                    d = INF_DIST
                if d < best:
                    best = d
        buf[fill] = np.uint32(best)
        fill += 1
        if best < old:
            updates += 1
        if fill == capacity:
            values[base : base + fill] = buf[:fill]
            flushes += 1
            base += fill
            fill = 0
    return updates, flushes, base, fill
