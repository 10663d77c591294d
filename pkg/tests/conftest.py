"""Shared fixtures: the three benchmark graphs and their oracle solutions.

Session-scoped so the acceptance tests and module tests reuse one build.
"""
from __future__ import annotations

import numpy as np
import pytest

import graphdelay as gd

ACCEPT_SEED = 1


def _weighted(spec: gd.GenSpec) -> gd.Graph:
    edges = gd.generate(spec)
    return gd.build_graph(edges, spec.num_vertices)


@pytest.fixture(scope="session")
def grid_graph() -> gd.Graph:
    spec = gd.GenSpec(family="grid", rows=32, cols=32, seed=ACCEPT_SEED, weight_range=(1, 255))
    return _weighted(spec)


@pytest.fixture(scope="session")
def rmat_graph() -> gd.Graph:
    spec = gd.GenSpec(
        family="rmat", scale=12, edge_factor=16, seed=ACCEPT_SEED, weight_range=(1, 255)
    )
    return _weighted(spec)


@pytest.fixture(scope="session")
def uniform_graph() -> gd.Graph:
    spec = gd.GenSpec(
        family="uniform", scale=12, edge_factor=16, seed=ACCEPT_SEED, weight_range=(1, 255)
    )
    return _weighted(spec)


@pytest.fixture(scope="session")
def test_graphs(grid_graph, rmat_graph, uniform_graph) -> dict[str, gd.Graph]:
    return {"grid": grid_graph, "rmat": rmat_graph, "uniform": uniform_graph}


@pytest.fixture(scope="session")
def pagerank_oracles(test_graphs) -> dict[str, np.ndarray]:
    return {name: gd.oracle_pagerank(g) for name, g in test_graphs.items()}


@pytest.fixture(scope="session")
def sssp_oracles(test_graphs) -> dict[str, np.ndarray]:
    return {name: gd.oracle_dijkstra(g, 0) for name, g in test_graphs.items()}


# Criterion outcomes registered by the acceptance tests; printed as a
# summary section so every run shows one pass/fail line per criterion.
ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def criterion():
    def _start(num: int, label: str):
        ACCEPTANCE_RESULTS[num] = (label, False)

        def _passed() -> None:
            ACCEPTANCE_RESULTS[num] = (label, True)

        return _passed

    return _start


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        label, ok = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {label}: {'PASS' if ok else 'FAIL'}")
