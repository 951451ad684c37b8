"""
Connectivity oracle for arbitrary graphs.

An n x n matrix holds min(k(s,t), k+1) and a cut id for every pair. The
cut list holds O(kn) cuts: one mixed cut per certificate edge whose pair
has k(s,t) <= k, and for non-adjacent pairs the boundary of the smaller of
R_st and R_ts, deduplicated by content.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from ..utils.parallel import ordered_map
from .flow import Cut, CutResult, kappa_adjacent, kappa_nonadjacent
from .graph import Graph, NodeSet
from .sparsifier import ni_certificate

logger = logging.getLogger(__name__)

NO_CUT = 0xFFFFFFFF
MAX_K = 254


@dataclass(frozen=True, eq=False)
class GeneralOracle:
    k: int
    n: int
    kappa: np.ndarray
    cut_ids: np.ndarray
    cut_list: Tuple[Cut, ...]
    adjacent_cut_count: int
    nonadjacent_cut_count: int
    max_sets_per_source: int = 0

    def _check_pair(self, s: int, t: int) -> None:
        if not (0 <= s < self.n and 0 <= t < self.n):
            raise ValueError(f"pair ({s}, {t}) outside [0, {self.n})")
        if s == t:
            raise ValueError(f"s and t must differ, got s = t = {s}")

    def query_kappa(self, s: int, t: int) -> int:
        """min(k(s,t), k+1)."""
        self._check_pair(s, t)
        return int(self.kappa[s, t])

    def query_con(self, s: int, t: int) -> bool:
        self._check_pair(s, t)
        return int(self.kappa[s, t]) == self.k + 1

    def query_cut(self, s: int, t: int) -> Optional[int]:
        self._check_pair(s, t)
        cut_id = int(self.cut_ids[s, t])
        return None if cut_id == NO_CUT else cut_id

    def pairs_within_k(self) -> int:
        """Unordered pairs with k(s,t) <= k: the cut count of the trivial structure."""
        return int(np.count_nonzero(np.triu(self.kappa <= self.k, 1)))

    def space_entries(self) -> int:
        return 2 * self.n * self.n + sum(c.size for c in self.cut_list)

    def bound_violations(self) -> List[str]:
        """Cut-count bounds that do not hold; empty when all do."""
        problems = []
        if self.nonadjacent_cut_count > (2 * self.k + 1) * self.n:
            problems.append(
                f"{self.nonadjacent_cut_count} non-adjacent cuts exceed (2k+1)n = {(2 * self.k + 1) * self.n}"
            )
        if self.adjacent_cut_count > (self.k + 1) * self.n:
            problems.append(
                f"{self.adjacent_cut_count} adjacent cuts exceed (k+1)n = {(self.k + 1) * self.n}"
            )
        if len(self.cut_list) > (3 * self.k + 2) * self.n:
            problems.append(f"{len(self.cut_list)} cuts exceed (3k+2)n = {(3 * self.k + 2) * self.n}")
        return problems


@dataclass(frozen=True)
class _Entry:
    t: int
    kappa: int
    cut: Optional[Cut] = None
    adjacent: bool = False
    owner: int = -1
    owner_set: Optional[NodeSet] = None


def _pair_entry(graph: Graph, certificate: Graph, k: int, s: int, t: int) -> _Entry:
    cap = k + 1
    if certificate.has_edge(s, t):
        result = kappa_adjacent(certificate, s, t, cap)
        return _Entry(t, result.kappa, result.cut, adjacent=True)

    forward = kappa_nonadjacent(certificate, s, t, cap)
    if forward.kappa > k:
        return _Entry(t, forward.kappa)

    if graph.has_edge(s, t):
        # A dropped edge has k+1 disjoint paths in the certificate.
        logger.warning(f"Pair ({s}, {t}) dropped by the certificate has kappa <= {k}; recomputing on G")
        result = kappa_adjacent(graph, s, t, cap)
        return _Entry(t, result.kappa, result.cut, adjacent=True)

    backward: CutResult = kappa_nonadjacent(certificate, t, s, cap)
    r_st, r_ts = forward.source_side, backward.source_side
    if (len(r_st), sorted(r_st)) <= (len(r_ts), sorted(r_ts)):
        return _Entry(t, forward.kappa, forward.cut, owner=s, owner_set=r_st)
    return _Entry(t, forward.kappa, backward.cut, owner=t, owner_set=r_ts)


def build_general(graph: Graph, k: int, workers: int = 1) -> GeneralOracle:
    """
    Build the matrix oracle.

    Args:
        graph: Any simple graph
        k: Connectivity threshold, 1 <= k <= 254
        workers: Threads used for the per-source rows

    Returns:
        The built GeneralOracle
    """
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in [1, {MAX_K}], got {k}")
    n = graph.n
    certificate = ni_certificate(graph, k)

    def row(s: int) -> List[_Entry]:
        return [_pair_entry(graph, certificate, k, s, t) for t in range(s + 1, n)]

    rows = ordered_map(row, range(n), workers)

    kappa_matrix = np.full((n, n), k + 1, dtype=np.uint8)
    cut_matrix = np.full((n, n), NO_CUT, dtype=np.uint32)
    cut_list: List[Cut] = []
    cut_index: Dict[Tuple, int] = {}
    adjacent_ids: Set[int] = set()
    nonadjacent_ids: Set[int] = set()
    sets_by_owner: Dict[int, Set[NodeSet]] = {}

    for s, entries in enumerate(rows):
        for entry in entries:
            t = entry.t
            kappa_matrix[s, t] = kappa_matrix[t, s] = entry.kappa
            if entry.cut is None:
                continue
            key = entry.cut.key
            if key not in cut_index:
                cut_index[key] = len(cut_list)
                cut_list.append(entry.cut)
            cut_id = cut_index[key]
            cut_matrix[s, t] = cut_matrix[t, s] = cut_id
            if entry.adjacent:
                adjacent_ids.add(cut_id)
            else:
                nonadjacent_ids.add(cut_id)
                sets_by_owner.setdefault(entry.owner, set()).add(entry.owner_set)

    oracle = GeneralOracle(
        k=k,
        n=n,
        kappa=kappa_matrix,
        cut_ids=cut_matrix,
        cut_list=tuple(cut_list),
        adjacent_cut_count=len(adjacent_ids),
        nonadjacent_cut_count=len(nonadjacent_ids),
        max_sets_per_source=max((len(v) for v in sets_by_owner.values()), default=0),
    )
    logger.info(
        f"GeneralOracle k={k} n={n}: {len(cut_list)} cuts "
        f"({oracle.adjacent_cut_count} adjacent, {oracle.nonadjacent_cut_count} non-adjacent)"
    )
    for problem in oracle.bound_violations():
        logger.warning(problem)
    return oracle
