import pytest

from graphdelay import (
    DEFAULT_DELTAS,
    Asynchronous,
    Delayed,
    GenSpec,
    ResultRow,
    SweepSpec,
    Synchronous,
    read_results_csv,
    run_sweep,
    summarize,
    write_results_csv,
)
from graphdelay.bench import (
    RESULTS_HEADER,
    SUMMARY_HEADER,
    summary_path_for,
    write_summary_csv,
)

TINY = GenSpec(family="uniform", scale=5, edge_factor=4, seed=3, weight_range=(1, 99))


def _spec(tmp_path, **kw):
    base = dict(
        graph_source=TINY,
        algorithm="pagerank",
        threads=(1, 2),
        modes=(Synchronous(), Asynchronous(), Delayed(16)),
        trials=2,
        out_path=str(tmp_path / "results.csv"),
    )
    base.update(kw)
    return SweepSpec(**base)


def test_default_deltas():
    assert DEFAULT_DELTAS == tuple(16 * 2**i for i in range(12))
    assert DEFAULT_DELTAS[0] == 16 and DEFAULT_DELTAS[-1] == 32768
    assert all(d % 16 == 0 for d in DEFAULT_DELTAS)


def test_row_field_formatting():
    row = ResultRow(
        graph="g", algorithm="pagerank", mode="delayed", delta=64, threads=4,
        read_policy="global", trial=2, rounds=10, total_seconds=0.123456,
        avg_round_seconds=0.012346, converged=True,
    )
    fields = row.to_fields()
    assert fields == [
        "g", "pagerank", "delayed", "64", "4", "global", "2", "10",
        "0.123456", "0.012346", "true",
    ]
    assert ResultRow.from_fields(fields) == row


def test_blank_delta_and_false_converged():
    row = ResultRow(
        graph="g", algorithm="sssp", mode="sync", delta=None, threads=1,
        read_policy="global", trial=1, rounds=0, total_seconds=0.0,
        avg_round_seconds=0.0, converged=False,
    )
    fields = row.to_fields()
    assert fields[3] == "" and fields[-1] == "false"
    assert ResultRow.from_fields(fields).delta is None


def test_from_fields_arity_check():
    with pytest.raises(ValueError, match="11 fields"):
        ResultRow.from_fields(["x"] * 10)


def test_results_csv_round_trip(tmp_path):
    rows = [
        ResultRow("g", "pagerank", "sync", None, t, "global", 1, 5,
                  0.000555, 0.000111, True)
        for t in (1, 2, 4)
    ]
    path = tmp_path / "r.csv"
    write_results_csv(rows, path)
    text = path.read_text()
    assert text.splitlines()[0] == ",".join(RESULTS_HEADER)
    assert read_results_csv(path) == rows


def test_results_csv_header_guard(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("graph,algorithm\n")
    with pytest.raises(ValueError, match="unexpected header"):
        read_results_csv(path)


def test_summary_path_for():
    assert summary_path_for("results.csv") == "results.summary.csv"
    assert summary_path_for("out/bench.csv") == "out/bench.summary.csv"
    assert summary_path_for("plain") == "plain.summary.csv"


def test_sweep_shape_and_order(tmp_path):
    spec = _spec(tmp_path)
    rows = run_sweep(spec, write=False)
    assert len(rows) == 3 * 2 * 2  # modes x threads x trials
    assert [r.mode for r in rows[:4]] == ["sync"] * 4
    assert [(r.threads, r.trial) for r in rows[:4]] == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert rows[-1].mode == "delayed" and rows[-1].delta == 16
    assert all(r.read_policy == "global" for r in rows)
    assert all(r.graph == TINY.describe() for r in rows)


def test_sweep_rows_are_deterministic_where_promised(tmp_path):
    # sync trials repeat exactly at any thread count, and single-threaded
    # trials of any mode do too; multi-threaded async/delayed may not
    rows = run_sweep(_spec(tmp_path), write=False)
    by_config = {}
    for r in rows:
        by_config.setdefault((r.mode, r.delta, r.threads), set()).add(r.rounds)
    for (mode, delta, threads), rounds in by_config.items():
        assert all(r > 0 for r in rounds), (mode, delta, threads)
        if mode == "sync" or threads == 1:
            assert len(rounds) == 1, (mode, delta, threads)


def test_emitted_rows_satisfy_total_identity(tmp_path):
    spec = _spec(tmp_path)
    run_sweep(spec)
    for row in read_results_csv(spec.out_path):
        assert row.total_seconds == pytest.approx(
            round(row.avg_round_seconds * row.rounds, 6), abs=0
        )


def test_sweep_writes_results_and_summary(tmp_path):
    spec = _spec(tmp_path)
    rows = run_sweep(spec)
    assert read_results_csv(spec.out_path) == rows
    summary_text = (tmp_path / "results.summary.csv").read_text()
    lines = summary_text.splitlines()
    assert lines[0] == ",".join(SUMMARY_HEADER)
    assert len(lines) == 1 + 3 * 2  # one row per (mode, threads)


def test_sweep_failure_rows(tmp_path):
    # shortest paths on an unweighted graph cannot run; every trial must
    # still produce a row, with zero rounds and converged=false
    unweighted = GenSpec(family="uniform", scale=4, edge_factor=2, seed=1)
    spec = _spec(tmp_path, graph_source=unweighted, algorithm="sssp")
    rows = run_sweep(spec, write=False)
    assert len(rows) == 12
    assert all(r.rounds == 0 and not r.converged for r in rows)
    assert all(r.total_seconds == 0.0 for r in rows)


def test_summarize_baselines():
    def mk(mode, delta, trial, total):
        return ResultRow("g", "pagerank", mode, delta, 2, "global", trial,
                         10, total, total / 10, True)

    rows = [
        mk("sync", None, 1, 0.4), mk("sync", None, 2, 0.6),
        mk("async", None, 1, 0.2), mk("async", None, 2, 0.2),
        mk("delayed", 16, 1, 0.25), mk("delayed", 16, 2, 0.25),
    ]
    summary = {(s.mode, s.delta): s for s in summarize(rows)}
    sync = summary[("sync", None)]
    assert sync.speedup_vs_sync == pytest.approx(1.0)
    assert sync.mean_total_seconds == pytest.approx(0.5)
    assert sync.min_total_seconds == pytest.approx(0.4)
    delayed = summary[("delayed", 16)]
    assert delayed.speedup_vs_sync == pytest.approx(2.0)
    assert delayed.speedup_vs_async == pytest.approx(0.8)
    assert summary[("async", None)].speedup_vs_async == pytest.approx(1.0)


def test_summarize_skips_failed_trials():
    ok = ResultRow("g", "sssp", "sync", None, 1, "global", 1, 4, 0.4, 0.1, True)
    bad = ResultRow("g", "sssp", "sync", None, 1, "global", 2, 0, 0.0, 0.0, False)
    (summary,) = summarize([ok, bad])
    assert summary.trials == 1
    assert summary.mean_total_seconds == pytest.approx(0.4)
    all_bad = summarize([bad])
    assert all_bad[0].trials == 0
    assert all_bad[0].speedup_vs_sync is None


def test_summary_csv_blank_speedups(tmp_path):
    row = summarize([ResultRow("g", "sssp", "delayed", 16, 1, "global",
                               1, 4, 0.4, 0.1, True)])[0]
    assert row.speedup_vs_sync is None  # no sync baseline present
    path = tmp_path / "s.csv"
    write_summary_csv([row], path)
    fields = path.read_text().splitlines()[1].split(",")
    assert fields[-2:] == ["", ""]


def test_spec_validation(tmp_path):
    with pytest.raises(ValueError, match="algorithm"):
        _spec(tmp_path, algorithm="pr")
    with pytest.raises(ValueError, match="trials"):
        _spec(tmp_path, trials=0)
    with pytest.raises(ValueError, match="threads"):
        _spec(tmp_path, threads=())
    with pytest.raises(ValueError, match="threads"):
        _spec(tmp_path, threads=(0, 2))


def test_spec_default_modes():
    spec = SweepSpec(graph_source=TINY, algorithm="pagerank")
    assert spec.modes[0] == Synchronous()
    assert spec.modes[1] == Asynchronous()
    assert tuple(m.delta for m in spec.modes[2:]) == DEFAULT_DELTAS
    assert len(spec.modes) == 14


def test_spec_graph_loading(tmp_path):
    spec = _spec(tmp_path)
    g = spec.load_graph()
    assert g.num_vertices == 32
    assert g.weights_out is not None
    assert spec.graph_label() == "uniform-5-4-s3-w1:99"
