"""
Tests for smallest-last ordering and degeneracy coloring.
"""
import networkx as nx
import pytest

from vconn_oracle.core.coloring import (
    DegeneracyError,
    color_classes,
    degeneracy_coloring,
    smallest_last_order,
)


def _adjacency(g):
    return {v: set(g.neighbors(v)) for v in g.nodes()}


def test_order_on_a_path():
    """Test that a path is 1-degenerate and leaves go first."""
    adjacency = _adjacency(nx.path_graph(4))
    order = smallest_last_order(adjacency, 1)
    assert sorted(order) == [0, 1, 2, 3]
    assert order[0] == 0


def test_degeneracy_violation():
    """Test that K4 is not 2-degenerate."""
    with pytest.raises(DegeneracyError):
        smallest_last_order(_adjacency(nx.complete_graph(4)), 2)


@pytest.mark.parametrize("g, d", [
    (nx.complete_graph(5), 4),
    (nx.cycle_graph(7), 2),
    (nx.petersen_graph(), 3),
    (nx.gnp_random_graph(30, 0.2, seed=4), 29),
])
def test_coloring_is_proper_and_bounded(g, d):
    """Test at most d+1 colors and no monochromatic edge."""
    color = degeneracy_coloring(_adjacency(g), d)
    assert set(color) == set(g.nodes())
    assert max(color.values()) <= d
    for u, v in g.edges():
        assert color[u] != color[v]


def test_coloring_uses_degeneracy_not_max_degree():
    """Test that a star (max degree 6, 1-degenerate) gets two colors."""
    color = degeneracy_coloring(_adjacency(nx.star_graph(6)), 1)
    assert set(color.values()) == {0, 1}


def test_color_classes():
    """Test grouping by color with ascending members."""
    classes = color_classes({5: 1, 2: 0, 9: 1, 1: 0})
    assert classes == [[1, 2], [5, 9]]
    assert color_classes({}) == []


def test_isolated_vertices():
    """Test that vertices with no conflicts all share color 0."""
    color = degeneracy_coloring({0: set(), 1: set(), 2: set()}, 0)
    assert color == {0: 0, 1: 0, 2: 0}
