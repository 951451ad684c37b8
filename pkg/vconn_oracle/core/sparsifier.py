"""
Sparse connectivity certificate: the union of k+1 scan-first forests.
"""
import logging
from collections import deque
from typing import List

from .graph import Edge, Graph, canonical_edge

logger = logging.getLogger(__name__)


def _scan_first_forest(n: int, edges: List[Edge]) -> List[Edge]:
    """Breadth-first spanning forest of (V, edges); roots and scans in index order."""
    neighbors: List[List[int]] = [[] for _ in range(n)]
    for u, v in edges:
        neighbors[u].append(v)
        neighbors[v].append(u)
    for nb in neighbors:
        nb.sort()

    marked = [False] * n
    forest: List[Edge] = []
    for root in range(n):
        if marked[root] or not neighbors[root]:
            continue
        marked[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in neighbors[x]:
                if not marked[y]:
                    marked[y] = True
                    forest.append(canonical_edge(x, y))
                    queue.append(y)
    return forest


def certificate_forests(graph: Graph, k: int) -> List[List[Edge]]:
    """
    Extract F_1..F_{k+1}, each a maximal spanning forest of what remains.

    Args:
        graph: Input graph
        k: Connectivity threshold

    Returns:
        Non-empty forests in extraction order (fewer than k+1 when E runs out)
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")

    remaining = graph.edges()
    forests: List[List[Edge]] = []
    for _ in range(k + 1):
        if not remaining:
            break
        forest = _scan_first_forest(graph.n, remaining)
        forests.append(forest)
        taken = set(forest)
        remaining = [e for e in remaining if e not in taken]
    return forests


def ni_certificate(graph: Graph, k: int) -> Graph:
    """
    Spanning subgraph with at most (k+1)(n-1) edges that keeps
    min(k(s,t), k+1) for every pair.
    """
    forests = certificate_forests(graph, k)
    edges = [e for forest in forests for e in forest]
    certificate = Graph(graph.n, edges)
    logger.info(
        f"Certificate for k={k}: {certificate.m} of {graph.m} edges kept "
        f"in {len(forests)} forests"
    )
    return certificate
