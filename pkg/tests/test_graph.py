"""
Tests for the graph core: construction, set primitives and the text format.
"""
import random

import pytest

from vconn_oracle.core import generators
from vconn_oracle.core.graph import (
    Graph,
    GraphFormatError,
    boundary,
    canonical_edge,
    emit_graph,
    is_small,
    is_tight,
    node_complement,
    parse_graph,
    read_graph,
    write_graph,
)


def test_graph_basic_accessors(c5):
    """Test node count, degrees and adjacency on C5."""
    assert c5.n == 5
    assert c5.m == 5
    assert c5.neighbors(0) == (1, 4)
    assert c5.degree(3) == 2
    assert c5.min_degree() == 2
    assert c5.has_edge(4, 0)
    assert not c5.has_edge(0, 2)


def test_edges_are_canonical_and_sorted():
    """Test that edges come back as (min, max) in sorted order."""
    graph = Graph(4, [(3, 2), (1, 0), (2, 0)])
    assert graph.edges() == [(0, 1), (0, 2), (2, 3)]
    assert canonical_edge(5, 2) == (2, 5)


@pytest.mark.parametrize("edges", [
    [(0, 0)],
    [(0, 1), (1, 0)],
    [(0, 4)],
    [(-1, 2)],
])
def test_invalid_edges_rejected(edges):
    """Test that loops, duplicates and out-of-range ids raise ValueError."""
    with pytest.raises(ValueError):
        Graph(4, edges)


def test_empty_graph():
    """Test the graph with no nodes."""
    graph = Graph(0)
    assert graph.m == 0
    assert graph.min_degree() == 0
    assert list(graph.nodes()) == []


def test_equality_and_hash():
    """Test that graphs compare by node count and edge set."""
    a = Graph(3, [(0, 1), (1, 2)])
    b = Graph(3, [(2, 1), (1, 0)])
    assert a == b
    assert hash(a) == hash(b)
    assert a != Graph(4, [(0, 1), (1, 2)])


def test_connected_after_removal(c5):
    """Test reachability after deleting a mixed cut."""
    assert c5.connected(0, 2)
    assert c5.connected(0, 2, removed_vertices=[1])
    assert not c5.connected(0, 2, removed_vertices=[1, 4])
    assert not c5.connected(0, 2, removed_vertices=[1], removed_edges=[(4, 0)])
    # Deleting an endpoint disconnects trivially
    assert not c5.connected(0, 2, removed_vertices=[0])


def test_boundary_and_complement_b6(b6):
    """Test the boundary of {y4, y5, y6} in the bridged-cliques graph."""
    a_set = {9, 10, 11}
    assert boundary(b6, a_set) == frozenset({6, 7, 8})
    assert node_complement(b6, a_set) == frozenset(range(6))


def test_partition_property(b6):
    """Test that A, its boundary and its node complement partition V."""
    a_set = frozenset({0, 3})
    parts = [a_set, boundary(b6, a_set), node_complement(b6, a_set)]
    assert sum(len(p) for p in parts) == b6.n
    assert frozenset().union(*parts) == frozenset(b6.nodes())


def test_is_tight(b6, c5):
    """Test tightness: |dA| = k and a non-empty node complement."""
    assert is_tight(b6, {9, 10, 11}, 3)
    assert is_tight(b6, {3, 4, 5}, 3)
    assert not is_tight(b6, {9, 10, 11}, 2)
    assert not is_tight(b6, set(), 3)
    # Boundary of {0, 1} in C5 is {2, 4}, complement {3}
    assert is_tight(c5, {0, 1}, 2)
    # Boundary of {0, 1, 2} is {3, 4}: nothing left outside
    assert not is_tight(c5, {0, 1, 2}, 2)


def test_is_small(b6):
    """Test 2|A| <= n - k exactly at the threshold."""
    # n - k = 9 for B6 with k = 3
    assert is_small(b6, range(4), 3)
    assert not is_small(b6, range(5), 3)


def test_parse_graph_with_comments():
    """Test parsing with comments and blank lines."""
    text = "# a triangle\n3 3\n\n0 1\n1 2  # closing edge next\n2 0\n"
    graph = parse_graph(text)
    assert graph.n == 3
    assert graph.edges() == [(0, 1), (0, 2), (1, 2)]


@pytest.mark.parametrize("text, line_no", [
    ("3 2\n0 1\n1 x\n", 3),
    ("3 2\n0 1\n1 1\n", 3),
    ("3 2\n0 1\n1 0\n", 3),
    ("3 2\n0 1\n0 3\n", 3),
    ("3 1\n0 1\n1 2\n", 3),
    ("3 2\n0 1 2\n", 2),
    ("3 2\n0 1\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line_no):
    """Test that every malformed input reports the offending line."""
    with pytest.raises(GraphFormatError) as excinfo:
        parse_graph(text)
    assert excinfo.value.line_no == line_no
    assert str(excinfo.value).startswith(f"line {line_no}: ")


def test_parse_missing_header():
    """Test that a file with no data lines is rejected."""
    with pytest.raises(GraphFormatError):
        parse_graph("# nothing here\n")


def test_emit_is_canonical():
    """Test that emitted text lists canonical edges in sorted order."""
    graph = Graph(3, [(2, 1), (1, 0)])
    assert emit_graph(graph) == "3 2\n0 1\n1 2\n"


def test_file_round_trip(tmp_path, b6):
    """Test writing and reading a graph file."""
    path = str(tmp_path / "b6.graph")
    write_graph(b6, path)
    assert read_graph(path) == b6


def test_read_graph_rejects_non_utf8(tmp_path):
    """Test that undecodable bytes surface as a format error with a line number."""
    path = tmp_path / "latin1.graph"
    path.write_bytes(b"3 2\n0 1\n# caf\xe9\n1 2\n")
    with pytest.raises(GraphFormatError) as excinfo:
        read_graph(str(path))
    assert excinfo.value.line_no == 3
    assert "not valid UTF-8" in str(excinfo.value)


def _noisy_text(graph, rng):
    """Edge list in shuffled order with flipped endpoints, comments and blank lines."""
    lines = ["# generated", f"{graph.n} {graph.m}"]
    edges = graph.edges()
    rng.shuffle(edges)
    for u, v in edges:
        if rng.random() < 0.5:
            u, v = v, u
        line = f"{u}\t{v}" if rng.random() < 0.3 else f"{u} {v}"
        if rng.random() < 0.2:
            line += "  # edge"
        lines.append(line)
        if rng.random() < 0.1:
            lines.append("")
    return "\n".join(lines) + "\n"


@pytest.mark.parametrize("seed", range(100))
def test_parse_emit_random_graphs(seed):
    """Test that parsing any valid rendering and emitting again gives canonical text."""
    rng = random.Random(seed)
    graph = generators.gnp(rng.randint(1, 30), rng.random(), seed=seed)
    parsed = parse_graph(_noisy_text(graph, rng))
    assert parsed == graph
    assert emit_graph(parsed) == emit_graph(graph)
    assert parse_graph(emit_graph(parsed)) == graph
