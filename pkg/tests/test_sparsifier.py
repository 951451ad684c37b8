"""
Tests for the sparse connectivity certificate.
"""
from itertools import combinations

import pytest

from vconn_oracle.core.flow import kappa
from vconn_oracle.core.generators import complete
from vconn_oracle.core.graph import Graph
from vconn_oracle.core.sparsifier import certificate_forests, ni_certificate


def _is_forest(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def test_forests_are_acyclic_and_disjoint(b6):
    """Test that each extracted forest is acyclic and no edge repeats."""
    forests = certificate_forests(b6, 3)
    assert 1 <= len(forests) <= 4
    seen = set()
    for forest in forests:
        assert _is_forest(b6.n, forest)
        assert not seen & set(forest)
        seen |= set(forest)


def test_first_forest_spans_each_component(two_edges, b6):
    """Test that F_1 is a spanning forest: n - (components) edges."""
    assert len(certificate_forests(b6, 1)[0]) == b6.n - 1
    assert len(certificate_forests(two_edges, 1)[0]) == 2


def test_forest_maximality(b6):
    """Test that every later edge closes a cycle within the earlier forest."""
    forests = certificate_forests(b6, 2)
    first = set(forests[0])
    for u, v in forests[1]:
        assert (u, v) not in first
        # u and v are already connected through F_1
        assert Graph(b6.n, first).connected(u, v)


def test_tree_is_its_own_certificate(p4):
    """Test that a tree loses no edges and stops after one forest."""
    forests = certificate_forests(p4, 3)
    assert len(forests) == 1
    assert ni_certificate(p4, 3) == p4


def test_edge_bound(k5):
    """Test |E(H)| <= (k+1)(n-1) on a dense graph."""
    k = 1
    certificate = ni_certificate(k5, k)
    assert certificate.m <= (k + 1) * (k5.n - 1)
    assert certificate.m < k5.m


def test_k_below_one_rejected(c5):
    """Test that k must be positive."""
    with pytest.raises(ValueError):
        certificate_forests(c5, 0)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_connectivity_preserved(random_graphs, k):
    """Test min(kappa_H, k) = min(kappa_G, k) on every pair."""
    for graph in random_graphs:
        certificate = ni_certificate(graph, k)
        assert certificate.m <= (k + 1) * max(graph.n - 1, 0)
        for s, t in combinations(graph.nodes(), 2):
            in_g = kappa(graph, s, t, cap=k + 1).kappa
            in_h = kappa(certificate, s, t, cap=k + 1).kappa
            assert min(in_g, k) == min(in_h, k), (s, t)


def test_certificate_cuts_transfer(random_graphs):
    """Test that a small cut found in H separates the pair in G."""
    k = 2
    for graph in random_graphs:
        certificate = ni_certificate(graph, k)
        for s, t in combinations(graph.nodes(), 2):
            result = kappa(certificate, s, t, cap=k + 1)
            if result.cut is not None:
                assert not graph.connected(s, t, result.cut.vertices, result.cut.edges)


def test_dense_graph_keeps_high_connectivity():
    """Test that K8 with k = 3 still has every pair above k."""
    graph = complete(8)
    certificate = ni_certificate(graph, 3)
    for s, t in combinations(graph.nodes(), 2):
        assert kappa(certificate, s, t, cap=4).kappa == 4
