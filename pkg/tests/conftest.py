"""
Pytest configuration and shared graph fixtures for vconn-oracle tests.

Node numbering of the bridged-cliques graph ("B6"): x_i is node i-1 and
y_i is node 6+i-1, so the bridges are (0, 6), (1, 7) and (2, 8).
"""
import os

import pytest

from vconn_oracle.core import generators
from vconn_oracle.core.graph import Graph


@pytest.fixture
def c5():
    """Cycle on five nodes; 2-regular."""
    return generators.cycle(5)


@pytest.fixture
def p4():
    """Path 0-1-2-3."""
    return generators.path(4)


@pytest.fixture
def star5():
    """Hub 0 with leaves 1..5."""
    return generators.star(5)


@pytest.fixture
def k4():
    return generators.complete(4)


@pytest.fixture
def k5():
    return generators.complete(5)


@pytest.fixture
def petersen():
    return generators.petersen()


@pytest.fixture
def wheel6():
    """Hub 0 joined to the rim cycle 1..6."""
    return generators.wheel(6)


@pytest.fixture
def b6():
    """Two K6 cliques joined by three bridges."""
    return generators.bridged_cliques(6, 3)


@pytest.fixture
def two_k4_sharing_node():
    """K4 on {0,1,2,3} and K4 on {3,4,5,6}: min degree 3, but 3 is a cut vertex."""
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
             (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]
    return Graph(7, edges)


@pytest.fixture
def two_edges():
    """Disconnected: edges 0-1 and 2-3."""
    return Graph(4, [(0, 1), (2, 3)])


@pytest.fixture
def random_graphs():
    """A few seeded G(n, p) graphs, some with a connectivity floor."""
    return [
        generators.gnp(8, 0.5, seed=1),
        generators.gnp(9, 0.4, seed=7),
        generators.gnp(10, 0.5, seed=3, connectivity=2),
        generators.gnp(10, 0.6, seed=5, connectivity=3),
    ]


@pytest.fixture
def graph_file(tmp_path):
    """Write a graph to a temporary file and return its path."""
    from vconn_oracle.core.graph import write_graph

    def write(graph, name="graph.txt"):
        path = os.path.join(str(tmp_path), name)
        write_graph(graph, path)
        return path

    return write


@pytest.fixture
def config_path(tmp_path):
    """Config file location that keeps tests out of the home directory."""
    return os.path.join(str(tmp_path), "config.yaml")
