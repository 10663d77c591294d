"""Command-line driver: generate graphs, run kernels, sweep, inspect locality.

Subcommands: gen, run, sweep, access. Exit codes: 0 on success, 1 for usage
errors (bad flags or flag combinations), 2 for runtime failures (I/O,
malformed files, non-convergence of an oracle, ...).
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .algorithms import BellmanFord, NoUpdates, PageRank, PageRankL1
from .bench import DEFAULT_DELTAS, SweepSpec, run_sweep, summary_path_for
from .engine import Asynchronous, Delayed, ReadPolicy, Synchronous, run
from .generate import GenSpec, generate
from .graph import build_graph
from .instrument import access_matrix, locality_report, write_access_csv
from .io import read_binary, write_binary
from .partition import partition_by_indegree

__all__ = ["main"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 on usage errors (default is 2)."""

    def error(self, message: str) -> None:  # noqa: D102
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_weights(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"--weights expects lo:hi, got {text!r}") from None
    if not 0 <= lo <= hi <= 2**32 - 1:
        raise UsageError(f"--weights range {text!r} outside [0, 2^32-1] or inverted")
    return lo, hi


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError:
        raise UsageError(f"{flag} expects a comma-separated integer list, got {text!r}") from None


def _gen_spec_from_args(args) -> GenSpec:
    weight_range = _parse_weights(args.weights) if args.weights else None
    try:
        if args.family == "grid":
            if args.rows is None or args.cols is None:
                raise UsageError("grid family requires --rows and --cols")
            return GenSpec(family="grid", rows=args.rows, cols=args.cols,
                           seed=args.seed, weight_range=weight_range)
        if args.scale is None:
            raise UsageError(f"{args.family} family requires --scale")
        return GenSpec(family=args.family, scale=args.scale, edge_factor=args.edge_factor,
                       seed=args.seed, weight_range=weight_range)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_gen(args) -> int:
    spec = _gen_spec_from_args(args)
    edges = generate(spec)
    g = build_graph(edges, spec.num_vertices)
    write_binary(g, args.out)
    max_deg = int(g.in_degrees().max()) if g.num_vertices else 0
    print(f"wrote {args.out}: n={g.num_vertices} m={g.num_edges} max_in_degree={max_deg}")
    return 0


def _make_mode(name: str, delta: int | None):
    if name == "sync":
        return Synchronous()
    if name == "async":
        return Asynchronous()
    if name == "delayed":
        if delta is None:
            raise UsageError("--mode delayed requires --delta")
        try:
            return Delayed(delta)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown mode {name!r}")


def cmd_run(args) -> int:
    mode = _make_mode(args.mode, args.delta)
    if args.mode != "delayed" and args.delta is not None:
        raise UsageError("--delta only applies to --mode delayed")
    policy = ReadPolicy(args.read_policy)
    g = read_binary(args.graph)
    if args.algorithm == "pagerank":
        kernel, stop = PageRank(), PageRankL1(args.epsilon)
    else:
        kernel, stop = BellmanFord(source=args.source), NoUpdates()
    result = run(g, kernel, mode, args.threads, read_policy=policy, stop=stop,
                 max_iterations=args.max_iterations)
    print(
        f"rounds={result.rounds} avg_round_seconds={result.avg_round_seconds:.6f} "
        f"converged={'true' if result.converged else 'false'}"
    )
    if args.out:
        fmt = "%d" if np.issubdtype(result.final_values.dtype, np.integer) else "%.9g"
        np.savetxt(args.out, result.final_values, fmt=fmt)
        print(f"wrote final values to {args.out}")
    return 0


def cmd_sweep(args) -> int:
    if args.graph is not None:
        source: str | GenSpec = args.graph
    elif args.family is not None:
        source = _gen_spec_from_args(args)
    else:
        raise UsageError("sweep needs a graph path or --family generation flags")
    mode_names = [m for m in args.modes.split(",") if m]
    deltas = _parse_int_list(args.deltas, "--deltas") if args.deltas else DEFAULT_DELTAS
    modes = []
    for name in mode_names:
        if name == "sync":
            modes.append(Synchronous())
        elif name == "async":
            modes.append(Asynchronous())
        elif name == "delayed":
            try:
                modes.extend(Delayed(d) for d in deltas)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        else:
            raise UsageError(f"unknown mode {name!r} in --modes")
    spec = SweepSpec(
        graph_source=source,
        algorithm=args.algorithm,
        threads=_parse_int_list(args.threads, "--threads"),
        modes=tuple(modes),
        trials=args.trials,
        source=args.source,
        epsilon=args.epsilon,
        max_iterations=args.max_iterations,
        out_path=args.out,
    )
    rows = run_sweep(spec)
    print(f"wrote {len(rows)} rows to {spec.out_path} "
          f"(summary: {summary_path_for(spec.out_path)})")
    return 0


def cmd_access(args) -> int:
    g = read_binary(args.graph)
    p = partition_by_indegree(g, args.threads)
    m = access_matrix(g, p)
    rep = locality_report(m)
    if args.out:
        write_access_csv(m, args.out)
        print(f"wrote access matrix to {args.out}")
    flagged = [str(i) for i, f in enumerate(rep.flagged) if f]
    print(f"threads={args.threads} diagonal_fraction={rep.diagonal_fraction:.6f}")
    print(f"rows_at_or_above_1/T: {' '.join(flagged) if flagged else '(none)'}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="graphdelay", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a graph and write it in binary form")
    p_gen.add_argument("--family", required=True, choices=["rmat", "uniform", "grid"])
    p_gen.add_argument("--scale", type=int, help="log2 of the vertex count (rmat/uniform)")
    p_gen.add_argument("--edge-factor", type=int, default=16)
    p_gen.add_argument("--rows", type=int, help="grid rows")
    p_gen.add_argument("--cols", type=int, help="grid cols")
    p_gen.add_argument("--seed", type=int, default=1)
    p_gen.add_argument("--weights", help="uniform integer weights, as lo:hi")
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_gen)

    p_run = sub.add_parser("run", help="run one kernel once and print a summary")
    p_run.add_argument("graph", help="binary graph path")
    p_run.add_argument("--algorithm", required=True, choices=["pagerank", "sssp"])
    p_run.add_argument("--mode", required=True, choices=["sync", "async", "delayed"])
    p_run.add_argument("--delta", type=int, help="delay buffer capacity (delayed mode)")
    p_run.add_argument("--threads", type=int, default=1)
    p_run.add_argument("--read-policy", choices=[p.value for p in ReadPolicy],
                       default=ReadPolicy.GLOBAL_ONLY.value)
    p_run.add_argument("--epsilon", type=float, default=1e-4)
    p_run.add_argument("--source", type=int, default=0, help="sssp source vertex")
    p_run.add_argument("--max-iterations", type=int, default=1000)
    p_run.add_argument("--out", help="optional final-values dump path")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a mode/delta/thread sweep, write CSVs")
    p_sweep.add_argument("graph", nargs="?", help="binary graph path (or use --family)")
    p_sweep.add_argument("--family", choices=["rmat", "uniform", "grid"])
    p_sweep.add_argument("--scale", type=int)
    p_sweep.add_argument("--edge-factor", type=int, default=16)
    p_sweep.add_argument("--rows", type=int)
    p_sweep.add_argument("--cols", type=int)
    p_sweep.add_argument("--seed", type=int, default=1)
    p_sweep.add_argument("--weights", help="uniform integer weights, as lo:hi")
    p_sweep.add_argument("--algorithm", required=True, choices=["pagerank", "sssp"])
    p_sweep.add_argument("--threads", default="1,2,4,8")
    p_sweep.add_argument("--modes", default="sync,async,delayed")
    p_sweep.add_argument("--deltas", help=f"comma list (default {DEFAULT_DELTAS[0]}..{DEFAULT_DELTAS[-1]})")
    p_sweep.add_argument("--trials", type=int, default=3)
    p_sweep.add_argument("--source", type=int, default=0)
    p_sweep.add_argument("--epsilon", type=float, default=1e-4)
    p_sweep.add_argument("--max-iterations", type=int, default=1000)
    p_sweep.add_argument("--out", default="results.csv")
    p_sweep.set_defaults(func=cmd_sweep)

    p_access = sub.add_parser("access", help="emit the access matrix and locality summary")
    p_access.add_argument("graph", help="binary graph path")
    p_access.add_argument("--threads", type=int, required=True)
    p_access.add_argument("--out", help="access matrix CSV path")
    p_access.set_defaults(func=cmd_access)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"graphdelay: usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, IndexError, RuntimeError) as exc:
        print(f"graphdelay: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
