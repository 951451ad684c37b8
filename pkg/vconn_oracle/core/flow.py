"""
Unit-capacity max-flow on the node-split network.

Computes capped local vertex connectivity, minimum vertex cuts and the
inclusion-minimal st-tight set (the source side closest to s).
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Set, Tuple

from .graph import Edge, Graph, NodeSet, canonical_edge

logger = logging.getLogger(__name__)


class FlowError(ValueError):
    """Raised when a pair does not satisfy a flow operation's precondition."""


@dataclass(frozen=True)
class Cut:
    """Mixed cut: vertices plus (usually zero or one) edges."""

    vertices: FrozenSet[int] = frozenset()
    edges: FrozenSet[Edge] = frozenset()

    @property
    def size(self) -> int:
        return len(self.vertices) + len(self.edges)

    @property
    def key(self) -> Tuple[Tuple[int, ...], Tuple[Edge, ...]]:
        """Canonical content used to deduplicate cut lists."""
        return tuple(sorted(self.vertices)), tuple(sorted(self.edges))

    def describe(self) -> str:
        """Members as printed by the query command, vertices first."""
        vertices, edges = self.key
        parts = [str(v) for v in vertices]
        parts.extend(f"E({u},{v})" for u, v in edges)
        return " ".join(parts)

    @classmethod
    def incident(cls, graph: Graph, v: int) -> "Cut":
        """All edges at v."""
        return cls(edges=frozenset(canonical_edge(v, u) for u in graph.neighbors(v)))


@dataclass(frozen=True)
class CutResult:
    kappa: int
    cut: Optional[Cut] = None
    source_side: Optional[NodeSet] = None


@dataclass
class SplitNetwork:
    """Residual network with an in-copy (2v) and out-copy (2v+1) per node.

    Internal arcs in->out have capacity 1, except at s and t where they are
    "infinite" (limit + 1). Every undirected edge yields two infinite arcs
    out-copy -> in-copy. Arc i and arc i ^ 1 are mutual reverses.
    """

    graph: Graph
    s: int
    t: int
    infinity: int
    skip_edge: Optional[Edge] = None
    head: List[int] = field(default_factory=list, init=False)
    residual: List[int] = field(default_factory=list, init=False)
    arcs_from: List[List[int]] = field(default_factory=list, init=False)

    def __post_init__(self) -> None:
        self.arcs_from = [[] for _ in range(2 * self.graph.n)]
        for v in self.graph.nodes():
            internal = self.infinity if v in (self.s, self.t) else 1
            self._add_arc(2 * v, 2 * v + 1, internal)
        for u, v in self.graph.edges():
            if (u, v) == self.skip_edge:
                continue
            self._add_arc(2 * u + 1, 2 * v, self.infinity)
            self._add_arc(2 * v + 1, 2 * u, self.infinity)

    @property
    def source(self) -> int:
        return 2 * self.s

    @property
    def sink(self) -> int:
        return 2 * self.t + 1

    @property
    def arc_count(self) -> int:
        """Forward arcs only: n internal arcs plus two per kept edge."""
        return len(self.head) // 2

    def _add_arc(self, u: int, v: int, capacity: int) -> None:
        self.arcs_from[u].append(len(self.head))
        self.head.append(v)
        self.residual.append(capacity)
        self.arcs_from[v].append(len(self.head))
        self.head.append(u)
        self.residual.append(0)

    def augment(self) -> bool:
        """Push one unit along a shortest residual path; False if none."""
        parent_arc = [-1] * len(self.arcs_from)
        parent_arc[self.source] = -2
        queue = deque([self.source])
        while queue and parent_arc[self.sink] == -1:
            x = queue.popleft()
            for a in self.arcs_from[x]:
                y = self.head[a]
                if self.residual[a] > 0 and parent_arc[y] == -1:
                    parent_arc[y] = a
                    queue.append(y)

        if parent_arc[self.sink] == -1:
            return False

        # Every st-path crosses a capacity-1 internal arc, so the bottleneck is 1.
        y = self.sink
        while y != self.source:
            a = parent_arc[y]
            self.residual[a] -= 1
            self.residual[a ^ 1] += 1
            y = self.head[a ^ 1]
        return True

    def max_flow(self, limit: int) -> int:
        flow = 0
        while flow < limit and self.augment():
            flow += 1
        return flow

    def reachable(self) -> Set[int]:
        """Split nodes reachable from the source in the residual network."""
        seen = {self.source}
        queue = deque([self.source])
        while queue:
            x = queue.popleft()
            for a in self.arcs_from[x]:
                y = self.head[a]
                if self.residual[a] > 0 and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def min_cut(self) -> Tuple[NodeSet, NodeSet]:
        """
        Read the minimum cut closest to s off a maximum flow.

        Returns:
            (source_side, cut_vertices): nodes with both copies reachable,
            and nodes with only the in-copy reachable
        """
        seen = self.reachable()
        inside, cut = [], []
        for v in self.graph.nodes():
            if 2 * v in seen:
                (inside if 2 * v + 1 in seen else cut).append(v)
        return frozenset(inside), frozenset(cut)


def _check_pair(graph: Graph, s: int, t: int) -> None:
    if not (0 <= s < graph.n and 0 <= t < graph.n):
        raise FlowError(f"pair ({s}, {t}) outside [0, {graph.n})")
    if s == t:
        raise FlowError(f"s and t must differ, got s = t = {s}")


def kappa_nonadjacent(graph: Graph, s: int, t: int, cap: int) -> CutResult:
    """
    Capped vertex connectivity of a non-adjacent pair.

    Args:
        graph: The graph
        s: Source node
        t: Target node, not adjacent to s
        cap: Early-exit bound, normally k + 1

    Returns:
        CutResult with kappa = min(k(s,t), cap); when kappa < cap also a
        minimum vertex cut and the inclusion-minimal st-tight set
    """
    _check_pair(graph, s, t)
    if graph.has_edge(s, t):
        raise FlowError(f"nodes {s} and {t} are adjacent; use kappa_adjacent")

    network = SplitNetwork(graph, s, t, infinity=cap + 1)
    flow = network.max_flow(cap)
    if flow >= cap:
        return CutResult(kappa=cap)

    source_side, cut_vertices = network.min_cut()
    if len(cut_vertices) != flow:
        raise RuntimeError(f"cut size {len(cut_vertices)} differs from flow {flow} for ({s}, {t})")
    return CutResult(kappa=flow, cut=Cut(vertices=cut_vertices), source_side=source_side)


def kappa_adjacent(graph: Graph, s: int, t: int, cap: int) -> CutResult:
    """
    Capped connectivity of an adjacent pair: 1 + k(s,t) in G - st.

    The returned cut is the edge st plus a minimum vertex cut of G - st.
    """
    _check_pair(graph, s, t)
    if not graph.has_edge(s, t):
        raise FlowError(f"nodes {s} and {t} are not adjacent; use kappa_nonadjacent")

    st = canonical_edge(s, t)
    network = SplitNetwork(graph, s, t, infinity=cap + 1, skip_edge=st)
    flow = network.max_flow(cap - 1)
    kappa = flow + 1
    if kappa >= cap:
        return CutResult(kappa=cap)

    _, cut_vertices = network.min_cut()
    return CutResult(kappa=kappa, cut=Cut(vertices=cut_vertices, edges=frozenset([st])))


def kappa(graph: Graph, s: int, t: int, cap: Optional[int] = None) -> CutResult:
    """Dispatch to the adjacent or non-adjacent variant; cap=None is uncapped."""
    if cap is None:
        cap = graph.n + 1
    if graph.has_edge(s, t):
        return kappa_adjacent(graph, s, t, cap)
    return kappa_nonadjacent(graph, s, t, cap)


def minimal_tight_set(graph: Graph, s: int, t: int, k: Optional[int] = None) -> NodeSet:
    """
    The unique inclusion-minimal st-tight set R_st.

    Args:
        graph: The graph
        s: Source node
        t: Target node, not adjacent to s
        k: When given, demand k(s,t) <= k

    Raises:
        FlowError: If s, t are adjacent or k(s,t) exceeds k
    """
    cap = graph.n + 1 if k is None else k + 1
    result = kappa_nonadjacent(graph, s, t, cap)
    if result.source_side is None:
        raise FlowError(f"kappa({s}, {t}) exceeds {k}; no tight set")
    return result.source_side
