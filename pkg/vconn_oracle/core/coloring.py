"""
Smallest-last ordering and greedy coloring of degenerate graphs.
"""
import heapq
import logging
from typing import Dict, Iterable, List, Mapping, Set, Tuple

logger = logging.getLogger(__name__)


class DegeneracyError(RuntimeError):
    """Raised when a subgraph has no vertex of degree <= d."""


def smallest_last_order(adjacency: Mapping[int, Iterable[int]], d: int) -> List[int]:
    """
    Repeatedly remove a minimum-degree vertex (lowest id on ties).

    Args:
        adjacency: Undirected graph as node -> neighbors
        d: Degeneracy bound every removed vertex must respect

    Returns:
        Vertices in removal order

    Raises:
        DegeneracyError: If the remaining graph has minimum degree > d
    """
    neighbors: Dict[int, Set[int]] = {v: set(nb) for v, nb in adjacency.items()}
    degree = {v: len(nb) for v, nb in neighbors.items()}
    heap: List[Tuple[int, int]] = [(deg, v) for v, deg in degree.items()]
    heapq.heapify(heap)
    removed: Set[int] = set()
    order: List[int] = []

    while heap:
        deg, v = heapq.heappop(heap)
        if v in removed or deg != degree[v]:
            continue  # stale entry
        if deg > d:
            raise DegeneracyError(
                f"remaining {len(degree) - len(removed)} vertices all have degree > {d}"
            )
        removed.add(v)
        order.append(v)
        for u in neighbors[v]:
            if u not in removed:
                degree[u] -= 1
                heapq.heappush(heap, (degree[u], u))
    return order


def degeneracy_coloring(adjacency: Mapping[int, Iterable[int]], d: int) -> Dict[int, int]:
    """
    Proper coloring with at most d+1 colors of a d-degenerate graph.

    Vertices are colored in reverse smallest-last order with the lowest color
    not used by an already colored neighbor; each has at most d such
    neighbors when it is colored.

    Returns:
        Map vertex -> color in [0, d]
    """
    order = smallest_last_order(adjacency, d)
    color: Dict[int, int] = {}
    for v in reversed(order):
        used = {color[u] for u in adjacency[v] if u in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c

    if color:
        logger.debug(f"Colored {len(color)} vertices with {max(color.values()) + 1} colors (d={d})")
    return color


def color_classes(color: Mapping[int, int]) -> List[List[int]]:
    """Vertices grouped by color, classes ordered by color, members ascending."""
    if not color:
        return []
    classes: List[List[int]] = [[] for _ in range(max(color.values()) + 1)]
    for v in sorted(color):
        classes[color[v]].append(v)
    return [cls for cls in classes if cls]
