"""
Connectivity oracle for k-connected graphs.

Stores O(n) cuts and answers "is k(s,t) >= k+1?" and "which stored cut
separates s and t?" in O(1):

* degree-k nodes (K) keep the cut made of their incident edges;
* critical edges st with s, t outside K form a forest F and keep one
  minimum mixed cut each;
* every node s outside K that lies in a small tight set keeps the boundary
  of R_s, the inclusion-minimal such set. The sets R_s are split into at
  most 2k+1 laminar families, each stored as a LaminarForest, so the test
  "t lies in the node complement of R_s" is one descendant query plus one
  lookup in the k-element boundary of R_s.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from ..utils.parallel import ordered_map
from .coloring import color_classes, degeneracy_coloring
from .flow import Cut, kappa, kappa_adjacent, kappa_nonadjacent
from .graph import Edge, Graph, NodeSet, boundary, canonical_edge, is_small
from .laminar import LaminarForest, build_forest

logger = logging.getLogger(__name__)

DEFAULT_VERIFY_MAX_NODES = 300


class NotKConnectedError(ValueError):
    """Raised when the input graph is not k-connected."""

    def __init__(self, message: str, witness: Optional[Tuple[int, int]] = None):
        self.witness = witness
        super().__init__(message)


class CriticalCycleError(AssertionError):
    """Critical edges between nodes of degree > k closed a cycle."""


@dataclass(frozen=True)
class SourceRecord:
    """Per-node data for a node s in S."""

    forest: int
    node: int
    boundary: FrozenSet[int]
    cut_id: int


@dataclass(frozen=True)
class KConnOracle:
    k: int
    n: int
    incident_cut_ids: Dict[int, int]
    critical_cuts: Dict[Edge, int]
    records: Dict[int, SourceRecord]
    forests: Tuple[LaminarForest, ...]
    cut_list: Tuple[Cut, ...]
    degree_k: FrozenSet[int] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "degree_k", frozenset(self.incident_cut_ids))

    @property
    def source_nodes(self) -> FrozenSet[int]:
        """The set S."""
        return frozenset(self.records)

    def _check_pair(self, s: int, t: int) -> None:
        if not (0 <= s < self.n and 0 <= t < self.n):
            raise ValueError(f"pair ({s}, {t}) outside [0, {self.n})")
        if s == t:
            raise ValueError(f"s and t must differ, got s = t = {s}")

    def complement_holds(self, record: SourceRecord, t: int) -> bool:
        """t is outside R_s and outside its boundary."""
        forest = self.forests[record.forest]
        return not forest.is_descendant(forest.psi[t], record.node) and t not in record.boundary

    def query_cut(self, s: int, t: int) -> Optional[int]:
        """
        Id of a stored st-cut of size <= k, or None when k(s,t) >= k+1.

        Adjacent pairs never satisfy the laminar conditions (t in the node
        complement of R_s rules out t adjacent to s), so E is not needed.
        """
        self._check_pair(s, t)

        cut_id = self.incident_cut_ids.get(s)
        if cut_id is None:
            cut_id = self.incident_cut_ids.get(t)
        if cut_id is not None:
            return cut_id

        cut_id = self.critical_cuts.get(canonical_edge(s, t))
        if cut_id is not None:
            return cut_id

        record = self.records.get(s)
        if record is not None and self.complement_holds(record, t):
            return record.cut_id
        record = self.records.get(t)
        if record is not None and self.complement_holds(record, s):
            return record.cut_id
        return None

    def query_con(self, s: int, t: int) -> bool:
        """True iff k(s,t) >= k+1."""
        return self.query_cut(s, t) is None

    def pairs_within_k(self) -> int:
        """Unordered pairs with k(s,t) = k, one query each."""
        return sum(
            1 for s in range(self.n) for t in range(s + 1, self.n) if self.query_cut(s, t) is not None
        )

    def space_entries(self) -> int:
        """Integers held by the structure, cut members included."""
        total = sum(c.size for c in self.cut_list)
        total += 2 * len(self.incident_cut_ids)
        total += 3 * len(self.critical_cuts)
        total += sum(3 + len(r.boundary) for r in self.records.values())
        total += sum(4 * f.size + f.n for f in self.forests)
        return total


def check_k_connected(graph: Graph, k: int, workers: int = 1) -> None:
    """
    Confirm k(s,t) >= k for every pair.

    Raises:
        NotKConnectedError: With the first failing pair as witness
    """
    def check_source(s: int) -> Optional[Tuple[int, int, int]]:
        for t in range(s + 1, graph.n):
            value = kappa(graph, s, t, cap=k).kappa
            if value < k:
                return s, t, value
        return None

    for failure in ordered_map(check_source, graph.nodes(), workers):
        if failure is not None:
            s, t, value = failure
            raise NotKConnectedError(
                f"graph is not {k}-connected: kappa({s}, {t}) = {value}", witness=(s, t)
            )


def compute_R_s(graph: Graph, k: int, s: int) -> Optional[NodeSet]:
    """
    The inclusion-minimal small tight set containing s, or None.

    For every t not adjacent to s with k(s,t) = k the minimal st-tight set
    is computed; R_s is the smallest of these that is small. Any small
    tight A containing s has some t in its node complement, and then A
    contains the minimal st-tight set, which is therefore small and tight.

    Raises:
        NotKConnectedError: If some k(s,t) < k is encountered
    """
    best: Optional[NodeSet] = None
    best_key: Optional[Tuple[int, Tuple[int, ...]]] = None
    for t in graph.nodes():
        if t == s or graph.has_edge(s, t):
            continue
        result = kappa_nonadjacent(graph, s, t, cap=k + 1)
        if result.kappa < k:
            raise NotKConnectedError(
                f"graph is not {k}-connected: kappa({s}, {t}) = {result.kappa}", witness=(s, t)
            )
        if result.kappa > k or result.source_side is None:
            continue
        candidate = result.source_side
        if not is_small(graph, candidate, k):
            continue
        key = (len(candidate), tuple(sorted(candidate)))
        if best_key is None or key < best_key:
            best, best_key = candidate, key
    return best


def _find_critical_edges(graph: Graph, k: int, outside_k: List[int], workers: int) -> List[Tuple[Edge, Cut]]:
    outside = set(outside_k)
    candidates = [e for e in graph.edges() if e[0] in outside and e[1] in outside]

    def check_edge(edge: Edge) -> Optional[Tuple[Edge, Cut]]:
        result = kappa_adjacent(graph, edge[0], edge[1], cap=k + 1)
        if result.kappa < k:
            raise NotKConnectedError(
                f"graph is not {k}-connected: kappa{edge} = {result.kappa}", witness=edge
            )
        if result.kappa == k and result.cut is not None:
            return edge, result.cut
        return None

    return [hit for hit in ordered_map(check_edge, candidates, workers) if hit is not None]


def _assert_forest(n: int, edges: List[Edge]) -> None:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise CriticalCycleError(
                f"critical edges outside K contain a cycle through ({u}, {v}); "
                "the graph is not k-connected or the flow engine is wrong"
            )
        parent[ru] = rv


def build_kconn(graph: Graph, k: int, verify: Optional[bool] = None, workers: int = 1) -> KConnOracle:
    """
    Build the oracle for a k-connected graph.

    Args:
        graph: Input graph, expected k-connected
        k: Connectivity threshold (>= 1)
        verify: Confirm k-connectivity over all pairs first; defaults to on
            for n <= 300. The minimum degree is always checked.
        workers: Threads used for the per-edge and per-source flow sweeps

    Returns:
        The built KConnOracle

    Raises:
        NotKConnectedError: Minimum degree below k, or a pair with k(s,t) < k
        CriticalCycleError: The critical edges outside K are not a forest
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    n = graph.n
    if n == 0 or graph.min_degree() < k:
        low = min(graph.nodes(), key=graph.degree) if n else None
        detail = f"node {low} has degree {graph.degree(low)}" if low is not None else "empty graph"
        raise NotKConnectedError(f"graph is not {k}-connected: {detail}")

    if verify is None:
        verify = n <= DEFAULT_VERIFY_MAX_NODES
    if verify:
        logger.info(f"Verifying {k}-connectivity over {n * (n - 1) // 2} pairs")
        check_k_connected(graph, k, workers)

    cut_list: List[Cut] = []
    cut_index: Dict[Tuple, int] = {}

    def store(cut: Cut) -> int:
        key = cut.key
        if key not in cut_index:
            cut_index[key] = len(cut_list)
            cut_list.append(cut)
        return cut_index[key]

    # (1) degree-k nodes
    degree_k = [v for v in graph.nodes() if graph.degree(v) == k]
    incident_cut_ids = {v: store(Cut.incident(graph, v)) for v in degree_k}
    outside_k = [v for v in graph.nodes() if graph.degree(v) > k]

    # (2) critical forest
    critical = _find_critical_edges(graph, k, outside_k, workers)
    _assert_forest(n, [edge for edge, _ in critical])
    critical_cuts = {edge: store(cut) for edge, cut in critical}

    # (3) minimal small tight sets
    minimal_sets = ordered_map(lambda s: compute_R_s(graph, k, s), outside_k, workers)
    tight_sets: Dict[int, NodeSet] = {
        s: r for s, r in zip(outside_k, minimal_sets) if r is not None
    }
    boundaries = {s: boundary(graph, r) for s, r in tight_sets.items()}

    # (4) conflict graph: arc a -> b whenever a lies on the boundary of R_b
    conflicts: Dict[int, set] = {s: set() for s in tight_sets}
    for b, bd in boundaries.items():
        for a in bd:
            if a in conflicts:
                conflicts[a].add(b)
                conflicts[b].add(a)

    # (5) indegree <= k, so the underlying graph is 2k-degenerate
    classes = color_classes(degeneracy_coloring(conflicts, 2 * k))

    # (6) one laminar forest per color class
    forests: List[LaminarForest] = []
    records: Dict[int, SourceRecord] = {}
    for index, members in enumerate(classes):
        forest = build_forest([tight_sets[s] for s in members], n)
        forests.append(forest)
        for s, tree_node in zip(members, forest.set_ids):
            records[s] = SourceRecord(
                forest=index,
                node=tree_node,
                boundary=boundaries[s],
                cut_id=store(Cut(vertices=boundaries[s])),
            )

    oracle = KConnOracle(
        k=k,
        n=n,
        incident_cut_ids=incident_cut_ids,
        critical_cuts=critical_cuts,
        records=records,
        forests=tuple(forests),
        cut_list=tuple(cut_list),
    )
    logger.info(
        f"KConnOracle k={k} n={n}: |K|={len(degree_k)}, |F|={len(critical_cuts)}, "
        f"|S|={len(records)}, {len(forests)} forests, {len(cut_list)} cuts"
    )
    if len(cut_list) > 2 * n or len(forests) > 2 * k + 1:
        raise AssertionError(
            f"bounds violated: {len(cut_list)} cuts (max {2 * n}), "
            f"{len(forests)} forests (max {2 * k + 1})"
        )
    return oracle
