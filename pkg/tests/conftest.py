"""Fixtures for tests.

This file provides the small graphs the classification results are stated for, and a ``--run-slow`` switch for the
exhaustive censuses on six and seven nodes.
"""

from __future__ import annotations

import pytest

from fanograph.graph import Graph, family_graph

# Cycle 1-2-3-4-1 with node 5 hanging off node 1
C4_PENDANT_EDGES = [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5)]
# Diamond with apexes 1 and 2, node 5 hanging off node 1
K_PENDANT_EDGES = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (1, 5)]
# Cycle 1-2-...-6-1 with node 7 hanging off node 1
C6_PENDANT_EDGES = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (1, 7)]


def pytest_addoption(parser: pytest.Parser) -> None:
    """Register ``--run-slow``."""
    parser.addoption("--run-slow", action="store_true", default=False, help="Run the exhaustive slow censuses.")


def pytest_configure(config: pytest.Config) -> None:
    """Register the ``slow`` marker."""
    config.addinivalue_line("markers", "slow: exhaustive census, only runs with --run-slow")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    """Skip ``slow`` tests unless ``--run-slow`` is given."""
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def path2() -> Graph:
    """The path on two nodes (the projective line)."""
    return family_graph("path", 2)


@pytest.fixture
def path3() -> Graph:
    """The path 1-2-3."""
    return family_graph("path", 3)


@pytest.fixture
def triangle() -> Graph:
    """The complete graph on three nodes."""
    return family_graph("complete", 3)


@pytest.fixture
def cycle4() -> Graph:
    """The cycle 1-2-3-4-1."""
    return family_graph("cycle", 4)


@pytest.fixture
def diamond() -> Graph:
    """``K_4`` minus the edge 3-4."""
    return family_graph("diamond", 4)


@pytest.fixture
def c4_pendant() -> Graph:
    """The 4-cycle with a pendant node on node 1."""
    return Graph.from_edges(5, C4_PENDANT_EDGES)


@pytest.fixture
def k_pendant() -> Graph:
    """The diamond with a pendant node on apex 1."""
    return Graph.from_edges(5, K_PENDANT_EDGES)


@pytest.fixture
def c6_pendant() -> Graph:
    """The 6-cycle with a pendant node on node 1."""
    return Graph.from_edges(7, C6_PENDANT_EDGES)
