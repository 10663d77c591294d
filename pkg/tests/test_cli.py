import subprocess
import sys

import numpy as np
import pytest

from graphdelay import (
    BellmanFord,
    NoUpdates,
    Synchronous,
    read_binary,
    read_results_csv,
    run,
)
from graphdelay.cli import main
from graphdelay.instrument import read_access_csv


@pytest.fixture(scope="module")
def weighted_bin(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "grid.bin"
    assert main(["gen", "--family", "grid", "--rows", "6", "--cols", "6",
                 "--weights", "1:50", "--seed", "2", "--out", str(path)]) == 0
    return str(path)


@pytest.fixture(scope="module")
def unweighted_bin(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "uni.bin"
    assert main(["gen", "--family", "uniform", "--scale", "5", "--edge-factor", "4",
                 "--seed", "3", "--out", str(path)]) == 0
    return str(path)


# ------------------------------------------------------------------ gen


def test_gen_reports_graph_size(tmp_path, capsys):
    out = tmp_path / "g.bin"
    assert main(["gen", "--family", "uniform", "--scale", "5", "--edge-factor", "2",
                 "--seed", "1", "--out", str(out)]) == 0
    line = capsys.readouterr().out
    assert f"wrote {out}" in line
    assert "n=32" in line and "max_in_degree=" in line
    g = read_binary(out)
    assert g.num_vertices == 32


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.bin", tmp_path / "b.bin"
    argv = ["gen", "--family", "rmat", "--scale", "6", "--edge-factor", "4",
            "--seed", "9", "--weights", "1:255"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_grid_needs_dimensions(tmp_path, capsys):
    assert main(["gen", "--family", "grid", "--out", str(tmp_path / "g.bin")]) == 1
    assert "usage error" in capsys.readouterr().err


def test_gen_rmat_needs_scale(tmp_path):
    assert main(["gen", "--family", "rmat", "--out", str(tmp_path / "g.bin")]) == 1


def test_gen_rejects_bad_weight_ranges(tmp_path, capsys):
    out = str(tmp_path / "g.bin")
    base = ["gen", "--family", "uniform", "--scale", "4", "--out", out]
    assert main(base + ["--weights", "5"]) == 1
    assert main(base + ["--weights", "9:3"]) == 1
    err = capsys.readouterr().err
    assert "lo:hi" in err


# ------------------------------------------------------------------ run


def test_run_prints_summary_line(weighted_bin, capsys):
    assert main(["run", weighted_bin, "--algorithm", "pagerank",
                 "--mode", "sync", "--threads", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("rounds=")
    assert "avg_round_seconds=" in out
    assert "converged=true" in out


def test_run_dumps_final_values(weighted_bin, tmp_path, capsys):
    dump = tmp_path / "dist.txt"
    assert main(["run", weighted_bin, "--algorithm", "sssp", "--mode", "sync",
                 "--source", "0", "--out", str(dump)]) == 0
    assert "wrote final values" in capsys.readouterr().out
    want = run(read_binary(weighted_bin), BellmanFord(source=0), Synchronous(),
               threads=1, stop=NoUpdates()).final_values
    got = np.loadtxt(dump)
    assert np.array_equal(got.astype(np.uint32), want)


def test_run_dump_preserves_unreachable_sentinel(tmp_path, capsys):
    from graphdelay import INF_DIST, build_graph, write_binary

    gpath = tmp_path / "tiny.bin"
    write_binary(build_graph([(0, 1, 7)], 3), gpath)
    dump = tmp_path / "dist.txt"
    assert main(["run", str(gpath), "--algorithm", "sssp", "--mode", "sync",
                 "--out", str(dump)]) == 0
    capsys.readouterr()
    got = np.loadtxt(dump, dtype=np.int64)
    assert list(got) == [0, 7, INF_DIST]


def test_run_delta_alignment_is_usage_error(weighted_bin, capsys):
    code = main(["run", weighted_bin, "--algorithm", "pagerank",
                 "--mode", "delayed", "--delta", "24"])
    assert code == 1
    assert "multiple of 16" in capsys.readouterr().err


def test_run_delayed_requires_delta(weighted_bin):
    assert main(["run", weighted_bin, "--algorithm", "pagerank",
                 "--mode", "delayed"]) == 1


def test_run_delta_forbidden_outside_delayed(weighted_bin, capsys):
    assert main(["run", weighted_bin, "--algorithm", "pagerank",
                 "--mode", "sync", "--delta", "16"]) == 1
    assert "only applies" in capsys.readouterr().err


def test_run_missing_file_is_runtime_error(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope.bin"), "--algorithm", "pagerank",
                 "--mode", "sync"]) == 2
    assert "error" in capsys.readouterr().err


def test_run_sssp_needs_weights(unweighted_bin, capsys):
    assert main(["run", unweighted_bin, "--algorithm", "sssp",
                 "--mode", "async"]) == 2
    assert "weighted" in capsys.readouterr().err


def test_run_delayed_with_policy(weighted_bin, capsys):
    assert main(["run", weighted_bin, "--algorithm", "sssp", "--mode", "delayed",
                 "--delta", "16", "--threads", "4",
                 "--read-policy", "local-preferred"]) == 0
    assert "converged=true" in capsys.readouterr().out


# ---------------------------------------------------------------- sweep


def test_sweep_from_generator_flags(tmp_path, capsys):
    out = tmp_path / "res.csv"
    assert main(["sweep", "--family", "uniform", "--scale", "5", "--edge-factor", "4",
                 "--seed", "3", "--algorithm", "pagerank", "--threads", "1,2",
                 "--modes", "sync,async", "--trials", "2", "--out", str(out)]) == 0
    assert "wrote 8 rows" in capsys.readouterr().out
    rows = read_results_csv(out)
    assert len(rows) == 8
    assert (tmp_path / "res.summary.csv").exists()


def test_sweep_with_delayed_deltas(weighted_bin, tmp_path):
    out = tmp_path / "res.csv"
    assert main(["sweep", weighted_bin, "--algorithm", "sssp", "--threads", "1",
                 "--modes", "delayed", "--deltas", "16,32", "--trials", "1",
                 "--out", str(out)]) == 0
    rows = read_results_csv(out)
    assert [(r.mode, r.delta) for r in rows] == [("delayed", 16), ("delayed", 32)]


def test_sweep_needs_a_graph(tmp_path):
    assert main(["sweep", "--algorithm", "pagerank",
                 "--out", str(tmp_path / "r.csv")]) == 1


def test_sweep_rejects_bad_modes_and_deltas(weighted_bin, tmp_path):
    out = str(tmp_path / "r.csv")
    assert main(["sweep", weighted_bin, "--algorithm", "pagerank",
                 "--modes", "sync,turbo", "--out", out]) == 1
    assert main(["sweep", weighted_bin, "--algorithm", "pagerank",
                 "--modes", "delayed", "--deltas", "16,x", "--out", out]) == 1
    assert main(["sweep", weighted_bin, "--algorithm", "pagerank",
                 "--modes", "delayed", "--deltas", "24", "--out", out]) == 1


# --------------------------------------------------------------- access


def test_access_single_thread_is_all_local(weighted_bin, capsys):
    assert main(["access", weighted_bin, "--threads", "1"]) == 0
    out = capsys.readouterr().out
    assert "diagonal_fraction=1.000000" in out
    assert "rows_at_or_above_1/T: 0" in out


def test_access_writes_matrix_csv(weighted_bin, tmp_path, capsys):
    out = tmp_path / "m.csv"
    assert main(["access", weighted_bin, "--threads", "4", "--out", str(out)]) == 0
    assert "threads=4" in capsys.readouterr().out
    m = read_access_csv(out)
    assert m.num_workers == 4
    assert m.total == read_binary(weighted_bin).num_edges


# ----------------------------------------------------------- plumbing


def test_unknown_subcommand_exits_one():
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 1


def test_missing_required_flag_exits_one(weighted_bin):
    with pytest.raises(SystemExit) as info:
        main(["run", weighted_bin, "--mode", "sync"])  # no --algorithm
    assert info.value.code == 1


def test_module_entry_point(weighted_bin):
    proc = subprocess.run(
        [sys.executable, "-m", "graphdelay", "run", weighted_bin,
         "--algorithm", "pagerank", "--mode", "async", "--threads", "2"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert "converged=true" in proc.stdout
