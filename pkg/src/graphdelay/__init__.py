"""graphdelay: a shared-memory engine for pull-style iterative graph kernels.

Vertex values live in one shared array; workers own contiguous blocks cut by
aggregate in-degree and propagate updates synchronously (double-buffered),
asynchronously (immediate stores), or through fixed-capacity thread-local
delay buffers flushed mid-round. Includes PageRank and Bellman-Ford kernels
with serial oracles, deterministic graph generators, binary/text graph
formats, cross-block access instrumentation, and a benchmark sweep harness.
"""

from .algorithms import (
    INF_DIST,
    BellmanFord,
    NoUpdates,
    PageRank,
    PageRankL1,
    bellman_ford_kernel,
    default_stop,
    oracle_dijkstra,
    oracle_pagerank,
    pagerank_kernel,
    pr_stop,
    sssp_stop,
)
from .bench import (
    DEFAULT_DELTAS,
    ResultRow,
    SweepSpec,
    read_results_csv,
    run_sweep,
    summarize,
    write_results_csv,
)
from .engine import (
    Asynchronous,
    Delayed,
    ReadPolicy,
    RunResult,
    Synchronous,
    run,
)
from .generate import (
    GenSpec,
    assign_weights,
    gen_grid,
    gen_rmat,
    gen_uniform,
    generate,
)
from .graph import Graph, build_graph, transpose
from .instrument import (
    AccessMatrix,
    FlushSummary,
    LocalityReport,
    access_matrix,
    flush_accounting,
    locality_report,
    write_access_csv,
)
from .io import (
    GraphFormatError,
    read_binary,
    read_edge_list,
    write_binary,
    write_edge_list,
)
from .partition import Partition, block_loads, owner_of, partition_by_indegree

__version__ = "0.1.0"

__all__ = [
    "AccessMatrix",
    "Asynchronous",
    "BellmanFord",
    "DEFAULT_DELTAS",
    "Delayed",
    "FlushSummary",
    "GenSpec",
    "Graph",
    "GraphFormatError",
    "INF_DIST",
    "LocalityReport",
    "NoUpdates",
    "PageRank",
    "PageRankL1",
    "Partition",
    "ReadPolicy",
    "ResultRow",
    "RunResult",
    "SweepSpec",
    "Synchronous",
    "access_matrix",
    "assign_weights",
    "bellman_ford_kernel",
    "block_loads",
    "build_graph",
    "default_stop",
    "flush_accounting",
    "gen_grid",
    "gen_rmat",
    "gen_uniform",
    "generate",
    "locality_report",
    "oracle_dijkstra",
    "oracle_pagerank",
    "owner_of",
    "pagerank_kernel",
    "partition_by_indegree",
    "pr_stop",
    "read_binary",
    "read_edge_list",
    "read_results_csv",
    "run",
    "run_sweep",
    "sssp_stop",
    "summarize",
    "transpose",
    "write_access_csv",
    "write_binary",
    "write_edge_list",
    "write_results_csv",
]
