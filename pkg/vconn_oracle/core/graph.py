"""
Immutable undirected graph and the set primitives used by every oracle.
"""
import logging
from collections import deque
from typing import FrozenSet, Iterable, List, Optional, Tuple

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
NodeSet = FrozenSet[int]


class GraphFormatError(ValueError):
    """Raised when graph text does not follow the edge-list format."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


def canonical_edge(u: int, v: int) -> Edge:
    """Return the edge uv with its endpoints in ascending order."""
    return (u, v) if u < v else (v, u)


def node_set(members: Iterable[int]) -> NodeSet:
    return frozenset(members)


class Graph:
    """Simple undirected graph on nodes 0..n-1.

    Adjacency lists are sorted tuples and the edge set holds canonical
    edges, so adjacency tests are O(1) and every iteration is deterministic.
    """

    __slots__ = ("_n", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        """
        Build a graph.

        Args:
            n: Number of nodes
            edges: Iterable of (u, v) pairs, in any orientation

        Raises:
            ValueError: On self-loops, parallel edges or ids outside [0, n)
        """
        if n < 0:
            raise ValueError(f"node count must be non-negative, got {n}")

        neighbors: List[set] = [set() for _ in range(n)]
        edge_set = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            e = canonical_edge(u, v)
            if e in edge_set:
                raise ValueError(f"duplicate edge {e}")
            edge_set.add(e)
            neighbors[u].add(v)
            neighbors[v].add(u)

        self._n = n
        self._adj: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(nb)) for nb in neighbors)
        self._edges: FrozenSet[Edge] = frozenset(edge_set)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    def nodes(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def min_degree(self) -> int:
        return min((len(nb) for nb in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self._edges

    def edges(self) -> List[Edge]:
        """Canonical edges sorted by (min, max)."""
        return sorted(self._edges)

    def connected(self,
                  s: int,
                  t: int,
                  removed_vertices: Iterable[int] = (),
                  removed_edges: Iterable[Edge] = ()) -> bool:
        """
        Check whether an st-path survives deleting a mixed cut.

        Args:
            s: Start node
            t: Target node
            removed_vertices: Nodes deleted from the graph
            removed_edges: Edges deleted from the graph (any orientation)

        Returns:
            True iff t is reachable from s in the remaining graph
        """
        blocked = set(removed_vertices)
        if s in blocked or t in blocked:
            return False
        cut_edges = {canonical_edge(u, v) for u, v in removed_edges}

        seen = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if x == t:
                return True
            for y in self._adj[x]:
                if y in seen or y in blocked:
                    continue
                if cut_edges and canonical_edge(x, y) in cut_edges:
                    continue
                seen.add(y)
                queue.append(y)
        return False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


def boundary(graph: Graph, nodes: Iterable[int]) -> NodeSet:
    """Neighbors of a node set that lie outside it (the set dA)."""
    inside = nodes if isinstance(nodes, frozenset) else frozenset(nodes)
    result = set()
    for v in inside:
        for u in graph.neighbors(v):
            if u not in inside:
                result.add(u)
    return frozenset(result)


def node_complement(graph: Graph, nodes: Iterable[int]) -> NodeSet:
    """V minus (A and its boundary); A, dA and A* partition V."""
    inside = nodes if isinstance(nodes, frozenset) else frozenset(nodes)
    closed = inside | boundary(graph, inside)
    return frozenset(v for v in graph.nodes() if v not in closed)


def is_tight(graph: Graph, nodes: Iterable[int], k: int) -> bool:
    """A non-empty set with |dA| = k and a non-empty node complement."""
    inside = frozenset(nodes)
    if not inside:
        return False
    if len(boundary(graph, inside)) != k:
        return False
    return bool(node_complement(graph, inside))


def is_small(graph: Graph, nodes: Iterable[int], k: int) -> bool:
    """|A| <= (n - k) / 2, compared exactly as 2|A| <= n - k."""
    return 2 * len(frozenset(nodes)) <= graph.n - k


def parse_graph(text: str) -> Graph:
    """
    Parse the edge-list text format.

    The first data line is "n m", followed by m lines "u v". Blank lines and
    everything after '#' are ignored.

    Args:
        text: Graph text

    Returns:
        The parsed graph

    Raises:
        GraphFormatError: With the offending line number
    """
    header: Optional[Tuple[int, int]] = None
    edges: List[Edge] = []
    seen = set()
    last_line = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {raw.strip()!r}", line_no)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected two integers, got {raw.strip()!r}", line_no)

        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("node and edge counts must be non-negative", line_no)
            header = (a, b)
            continue

        n, m = header
        if len(edges) == m:
            raise GraphFormatError(f"more than the declared {m} edges", line_no)
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"node id out of range [0, {n})", line_no)
        if a == b:
            raise GraphFormatError(f"self-loop at node {a}", line_no)
        e = canonical_edge(a, b)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {a} {b}", line_no)
        seen.add(e)
        edges.append(e)

    if header is None:
        raise GraphFormatError("missing 'n m' header line", last_line or 1)
    if len(edges) != header[1]:
        raise GraphFormatError(
            f"declared {header[1]} edges but found {len(edges)}", last_line or 1
        )

    graph = Graph(header[0], edges)
    logger.debug(f"Parsed graph with n={graph.n}, m={graph.m}")
    return graph


def emit_graph(graph: Graph) -> str:
    """Canonical text: header, then edges sorted by (min, max)."""
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, "rb") as f:
        data = f.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise GraphFormatError(
            f"not valid UTF-8 text: {e.reason} at byte {e.start}",
            line_no=data.count(b"\n", 0, e.start) + 1,
        ) from e
    return parse_graph(text)


def write_graph(graph: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(emit_graph(graph))
    logger.info(f"Graph written to {path}")
