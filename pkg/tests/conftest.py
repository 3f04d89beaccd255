#!/usr/bin/env python3
"""
Pytest configuration and fixtures for the sheaf community detection test suite.

Contains small hand-checkable graphs, the karate club graph, seeded random
generators shared by all test modules.
"""

import io
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from sheaf_communities.main import run_cli
from sheaf_communities.models import CellularSheaf, Graph
from sheaf_communities.services import karate_club, twisted_triangle_sheaf


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def single_edge() -> Graph:
    return Graph(vertex_count=2, edges=((0, 1),))


@pytest.fixture
def triangle() -> Graph:
    return Graph(vertex_count=3, edges=((0, 1), (1, 2), (0, 2)))


@pytest.fixture
def path3() -> Graph:
    """Path 0 - 1 - 2."""
    return Graph(vertex_count=3, edges=((0, 1), (1, 2)))


@pytest.fixture
def two_triangles() -> Graph:
    """Two triangles joined by the bridge 2 - 3."""
    return Graph.from_pairs(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])


@pytest.fixture(scope="session")
def karate() -> Graph:
    return karate_club()


@pytest.fixture
def twisted() -> CellularSheaf:
    return twisted_triangle_sheaf()


def random_graph(rng: np.random.Generator, vertex_count: int, edge_probability: float) -> Graph:
    """Erdos-Renyi graph over ``vertex_count`` vertices, possibly disconnected."""
    pairs = [
        (u, v)
        for u in range(vertex_count)
        for v in range(u + 1, vertex_count)
        if rng.random() < edge_probability
    ]
    return Graph.from_pairs(vertex_count, pairs)


def random_graph_without_isolated(rng: np.random.Generator, vertex_count: int,
                                  edge_probability: float) -> Graph:
    """Random graph in which every vertex has at least one neighbor."""
    while True:
        graph = random_graph(rng, vertex_count, edge_probability)
        if graph.edge_count and not graph.isolated_vertices():
            return graph


@pytest.fixture
def make_random_graph() -> Callable[..., Graph]:
    return random_graph


@pytest.fixture
def make_connected_like_graph() -> Callable[..., Graph]:
    return random_graph_without_isolated


@pytest.fixture
def cli(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Callable[..., tuple]:
    """Run the command line in ``tmp_path`` and capture stdout.

    Returns a function ``cli(*argv) -> (exit_code, stdout_text)``.
    """
    monkeypatch.chdir(tmp_path)
    for name in ("SHEAF_EPS", "SHEAF_T_MAX", "SHEAF_DT", "SHEAF_WORKERS", "SHEAF_LOG_LEVEL", "SHEAF_LOG_FILE"):
        monkeypatch.delenv(name, raising=False)

    def invoke(*argv: str) -> tuple:
        stdout = io.StringIO()
        code = run_cli(list(argv), stdout=stdout, configure_logging=False)
        return code, stdout.getvalue()

    return invoke

