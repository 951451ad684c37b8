"""
Named graph families and random graphs for experiments and the test corpus.
"""
import itertools
import logging
from typing import Callable, Dict, List, Optional

import networkx as nx
from tenacity import RetryError, retry, retry_if_exception_type, stop_after_attempt

from .graph import Graph

logger = logging.getLogger(__name__)


class ConnectivityNotReached(RuntimeError):
    """A sampled graph fell short of the requested connectivity."""


def from_networkx(g: nx.Graph) -> Graph:
    """Convert a networkx graph, relabelling nodes 0..n-1 in sorted order."""
    relabelled = nx.convert_node_labels_to_integers(g, ordering="sorted")
    return Graph(relabelled.number_of_nodes(), relabelled.edges())


def to_networkx(graph: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(graph.nodes())
    g.add_edges_from(graph.edges())
    return g


def _require(name: str, value: int, minimum: int) -> None:
    if value < minimum:
        raise ValueError(f"{name} must be at least {minimum}, got {value}")


def complete(n: int) -> Graph:
    _require("n", n, 1)
    return from_networkx(nx.complete_graph(n))


def cycle(n: int) -> Graph:
    _require("n", n, 3)
    return from_networkx(nx.cycle_graph(n))


def path(n: int) -> Graph:
    _require("n", n, 1)
    return from_networkx(nx.path_graph(n))


def star(leaves: int) -> Graph:
    """Hub 0 joined to `leaves` leaves."""
    _require("leaves", leaves, 0)
    return from_networkx(nx.star_graph(leaves))


def petersen() -> Graph:
    return from_networkx(nx.petersen_graph())


def wheel(rim: int) -> Graph:
    """Hub 0 joined to every node of a cycle on 1..rim."""
    _require("rim", rim, 3)
    return from_networkx(nx.wheel_graph(rim + 1))


def hypercube(d: int) -> Graph:
    """The d-cube; d = 0 is a single node."""
    _require("d", d, 0)
    if d == 0:
        return Graph(1)
    return from_networkx(nx.hypercube_graph(d))


def prism(rungs: int) -> Graph:
    """
    Circular ladder: cycles 0..rungs-1 and rungs..2*rungs-1 joined rung by
    rung, i joined to rungs+i. 3-regular and 3-connected.
    """
    _require("rungs", rungs, 3)
    return Graph(2 * rungs, nx.circular_ladder_graph(rungs).edges())


def bridged_cliques(size: int, bridges: int) -> Graph:
    """
    Two cliques X = 0..size-1 and Y = size..2*size-1 joined by the
    matching x_i y_i for i < bridges.
    """
    _require("size", size, 1)
    if not 0 <= bridges <= size:
        raise ValueError(f"bridges must be in [0, {size}], got {bridges}")
    edges = list(itertools.combinations(range(size), 2))
    edges += [(size + u, size + v) for u, v in itertools.combinations(range(size), 2)]
    edges += [(i, size + i) for i in range(bridges)]
    return Graph(2 * size, edges)


def gnp(n: int, p: float, seed: int, connectivity: int = 0, max_attempts: int = 100) -> Graph:
    """
    Sample G(n, p), moving to the next seed until the vertex connectivity
    reaches `connectivity`.

    Args:
        n: Number of nodes
        p: Edge probability
        seed: First seed tried; attempt i uses seed + i
        connectivity: Required global vertex connectivity (0 accepts anything)
        max_attempts: Seeds tried before giving up

    Raises:
        ValueError: n or max_attempts below 1, or p outside [0, 1]
        ConnectivityNotReached: If no attempt reaches the connectivity
    """
    _require("n", n, 1)
    _require("max_attempts", max_attempts, 1)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    seeds = itertools.count(seed)

    @retry(
        stop=stop_after_attempt(max_attempts),
        retry=retry_if_exception_type(ConnectivityNotReached),
    )
    def sample() -> Graph:
        current = next(seeds)
        g = nx.gnp_random_graph(n, p, seed=current)
        if connectivity > 0 and nx.node_connectivity(g) < connectivity:
            logger.debug(f"G({n}, {p}) with seed {current} is below connectivity {connectivity}")
            raise ConnectivityNotReached(f"seed {current} gives connectivity below {connectivity}")
        return from_networkx(g)

    try:
        return sample()
    except RetryError as e:
        raise ConnectivityNotReached(
            f"no G({n}, {p}) with connectivity >= {connectivity} in {max_attempts} seeds from {seed}"
        ) from e


FAMILIES: Dict[str, Callable[..., Graph]] = {
    "complete": complete,
    "cycle": cycle,
    "path": path,
    "star": star,
    "petersen": petersen,
    "wheel": wheel,
    "hypercube": hypercube,
    "prism": prism,
    "bridged-cliques": bridged_cliques,
    "gnp": gnp,
}


def generate(family: str, args: List[str], connectivity: int = 0, max_attempts: int = 100) -> Graph:
    """
    Build a named family from string arguments, as given on the command line.

    Raises:
        ValueError: Unknown family or wrong arguments
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(sorted(FAMILIES))}")
    try:
        if family == "gnp":
            n, p, seed = args
            return gnp(int(n), float(p), int(seed), connectivity, max_attempts)
        if family == "petersen":
            if args:
                raise ValueError("petersen takes no arguments")
            return petersen()
        return FAMILIES[family](*(int(a) for a in args))
    except (TypeError, nx.NetworkXError) as e:
        raise ValueError(f"wrong arguments for {family}: {e}") from e


def describe(graph: Graph, name: Optional[str] = None) -> str:
    label = f"{name}: " if name else ""
    return f"{label}n={graph.n}, m={graph.m}, min degree={graph.min_degree()}"
