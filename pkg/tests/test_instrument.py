import numpy as np
import pytest

from graphdelay import (
    AccessMatrix,
    Asynchronous,
    Delayed,
    PageRank,
    Synchronous,
    access_matrix,
    build_graph,
    flush_accounting,
    locality_report,
    partition_by_indegree,
    run,
)
from graphdelay.instrument import read_access_csv, write_access_csv
from graphdelay.partition import Partition, block_loads


def _two_triangles():
    # vertices 0-2 and 3-5, fully connected within each half, no crossings
    edges = []
    for base in (0, 3):
        for i in range(3):
            for j in range(3):
                if i != j:
                    edges.append((base + i, base + j))
    return build_graph(edges, 6)


def test_disjoint_blocks_read_only_themselves():
    g = _two_triangles()
    m = access_matrix(g, partition_by_indegree(g, 2))
    assert np.array_equal(m.counts, [[6, 0], [0, 6]])
    rep = locality_report(m)
    assert np.array_equal(rep.self_fraction, [1.0, 1.0])
    assert rep.flagged.all()
    assert rep.diagonal_fraction == 1.0


def test_bipartite_split_reads_only_the_other_block():
    # K_{2,2} with the parts straddling the cut: 0,1 -> 2,3 and back
    edges = [(u, v) for u in (0, 1) for v in (2, 3)]
    edges += [(v, u) for u in (0, 1) for v in (2, 3)]
    g = build_graph(edges, 4)
    m = access_matrix(g, partition_by_indegree(g, 2))
    assert np.array_equal(m.counts, [[0, 4], [4, 0]])
    rep = locality_report(m)
    assert rep.diagonal_fraction == 0.0
    assert not rep.flagged.any()


def test_counts_conserve_edges_and_match_block_loads():
    rng = np.random.default_rng(21)
    g = build_graph(rng.integers(0, 150, size=(1800, 2)), 150)
    for t in (1, 2, 8, 32):
        p = partition_by_indegree(g, t)
        m = access_matrix(g, p)
        assert m.counts.shape == (t, t)
        assert m.total == g.num_edges
        assert (m.counts >= 0).all()
        assert np.array_equal(m.counts.sum(axis=1), block_loads(g, p))


def test_flag_threshold_is_inclusive():
    # row 0 self-fraction exactly 1/2 with T=2 must be flagged
    m = AccessMatrix(np.array([[3, 3], [5, 1]], np.int64))
    rep = locality_report(m)
    assert rep.self_fraction[0] == 0.5
    assert bool(rep.flagged[0]) is True  # exactly 1/T counts as flagged
    assert bool(rep.flagged[1]) is False  # 1/6 is below the 1/2 bar
    assert rep.diagonal_fraction == pytest.approx(4 / 12)


def test_empty_rows_are_not_flagged():
    m = AccessMatrix(np.array([[0, 0], [0, 4]], np.int64))
    rep = locality_report(m)
    assert rep.self_fraction[0] == 0.0
    assert not rep.flagged[0]
    assert rep.flagged[1]


def test_edgeless_graph_matrix_is_zero():
    g = build_graph([], 8)
    m = access_matrix(g, partition_by_indegree(g, 4))
    assert m.total == 0
    assert locality_report(m).diagonal_fraction == 0.0


def test_partition_graph_mismatch_rejected():
    g = build_graph([(0, 1)], 2)
    other = partition_by_indegree(build_graph([(0, 1)], 5), 2)
    with pytest.raises(ValueError, match="partition covers"):
        access_matrix(g, other)


def test_access_csv_round_trip(tmp_path):
    rng = np.random.default_rng(22)
    g = build_graph(rng.integers(0, 60, size=(500, 2)), 60)
    m = access_matrix(g, partition_by_indegree(g, 4))
    path = tmp_path / "access.csv"
    write_access_csv(m, path)
    back = read_access_csv(path)
    assert np.array_equal(back.counts, m.counts)
    assert path.read_text().splitlines()[0] == "0,1,2,3"


def test_access_csv_rejects_bad_shapes(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,1\n3,4\n")
    with pytest.raises(ValueError, match="expected a 2x2"):
        read_access_csv(path)
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ValueError, match="empty"):
        read_access_csv(empty)


def test_flush_accounting_by_mode():
    rng = np.random.default_rng(23)
    g = build_graph(rng.integers(0, 80, size=(600, 2)), 80)

    d = run(g, PageRank(), Delayed(16), threads=2)
    summary = flush_accounting(d)
    assert summary.total_flushes == d.total_flushes
    blocks = np.diff(d.partition.boundaries)
    for wid, b in enumerate(blocks):
        assert summary.flushes_per_round[wid] == pytest.approx(-(-int(b) // 16))

    s = flush_accounting(run(g, PageRank(), Synchronous(), threads=2))
    assert s.total_flushes == [s.rounds, s.rounds]
    assert s.flushes_per_round == [1.0, 1.0]

    a = flush_accounting(run(g, PageRank(), Asynchronous(), threads=2))
    assert a.total_flushes == [0, 0]
    assert a.flushes_per_round == [0.0, 0.0]
    assert a.avg_round_seconds >= 0.0


def test_matrix_reflects_partition_not_schedule():
    # the matrix is a static property: same graph, finer partition, the
    # blocks nest so coarse counts are sums of fine ones
    rng = np.random.default_rng(24)
    g = build_graph(rng.integers(0, 64, size=(700, 2)), 64)
    fine = access_matrix(g, Partition(np.array([0, 16, 32, 48, 64])))
    coarse = access_matrix(g, Partition(np.array([0, 32, 64])))
    folded = fine.counts.reshape(2, 2, 2, 2).sum(axis=(1, 3))
    assert np.array_equal(folded, coarse.counts)
