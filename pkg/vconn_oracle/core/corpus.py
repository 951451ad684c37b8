"""
Seed corpus loading and the per-instance check runner behind `verify`.
"""
import logging
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import yaml

from ..db.oracle_store import dumps, loads
from .flow import FlowError, kappa, minimal_tight_set
from .general_oracle import build_general
from .generators import generate
from .graph import Graph
from .kconn_oracle import KConnOracle, NotKConnectedError, build_kconn
from .sparsifier import ni_certificate
from .verify import (
    ENUMERATION_MAX_NODES,
    CutOracle,
    ReportLine,
    check_minimal_uncrossing,
    check_query_lemma,
    check_tight_intersections,
    check_uncrossing,
    enumerate_kappa,
    enumerate_tight_sets,
    oracle_equivalence,
    uncrossing_triples,
    validate_cut,
)

logger = logging.getLogger(__name__)

CORPUS_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data", "corpus.yaml")
TIGHT_SET_MAX_NODES = 10
UNCROSSING_MAX_NODES = 14

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    family: str
    k: int
    args: Tuple[str, ...] = ()
    connectivity: int = 0

    def build_graph(self, max_attempts: int = 100) -> Graph:
        return generate(self.family, list(self.args), self.connectivity, max_attempts)


def _entry(raw: Any, path: str) -> CorpusEntry:
    try:
        return CorpusEntry(
            name=str(raw["name"]),
            family=str(raw["family"]),
            k=int(raw["k"]),
            args=tuple(str(a) for a in raw.get("args", [])),
            connectivity=int(raw.get("connectivity", 0)),
        )
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise ValueError(f"bad corpus entry {raw!r} in {path}: {e}") from e


def _read(path: Optional[str]) -> Tuple[str, Dict[str, Any]]:
    path = path or CORPUS_PATH
    with open(path, "r", encoding="utf-8") as f:
        return path, yaml.safe_load(f) or {}


def load_corpus(path: Optional[str] = None) -> List[CorpusEntry]:
    """
    Load corpus entries from YAML.

    Args:
        path: Corpus file; the packaged seed corpus by default

    Returns:
        Entries in file order
    """
    path, data = _read(path)
    entries = [_entry(raw, path) for raw in data.get("graphs", [])]
    logger.debug(f"Loaded {len(entries)} corpus entries from {path}")
    return entries


@dataclass(frozen=True)
class Sweep:
    """A seeded batch of G(n, p) entries plus named extras."""

    name: str
    count: int
    nodes: Tuple[int, int]
    degree: Tuple[float, float]
    k: Tuple[int, ...]
    seed: int
    k_connected: bool = False
    graphs: Tuple[CorpusEntry, ...] = ()

    def entries(self) -> List[CorpusEntry]:
        """Expand to corpus entries; the same sweep always gives the same list."""
        rng = np.random.default_rng(self.seed)
        entries = []
        for i in range(self.count):
            n = int(rng.integers(self.nodes[0], self.nodes[1], endpoint=True))
            degree = float(rng.uniform(self.degree[0], self.degree[1]))
            k = int(rng.choice(self.k))
            p = min(0.95, degree / (n - 1))
            entries.append(CorpusEntry(
                name=f"{self.name}-{i}",
                family="gnp",
                k=k,
                args=(str(n), f"{p:.4f}", str(self.seed + i)),
                connectivity=k if self.k_connected else 0,
            ))
        return entries + list(self.graphs)


def load_sweeps(path: Optional[str] = None) -> Dict[str, Sweep]:
    """
    Load the seeded sweeps of a corpus file, keyed by name.

    Raises:
        ValueError: A sweep is missing a field or has an empty range
    """
    path, data = _read(path)
    sweeps: Dict[str, Sweep] = {}
    for raw in data.get("sweeps", []):
        try:
            lo, hi = (int(v) for v in raw["nodes"])
            low_degree, high_degree = (float(v) for v in raw["degree"])
            sweep = Sweep(
                name=str(raw["name"]),
                count=int(raw["count"]),
                nodes=(lo, hi),
                degree=(low_degree, high_degree),
                k=tuple(int(v) for v in raw["k"]),
                seed=int(raw["seed"]),
                k_connected=bool(raw.get("k_connected", False)),
                graphs=tuple(_entry(g, path) for g in raw.get("graphs", [])),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ValueError(f"bad sweep {raw!r} in {path}: {e}") from e
        if not 2 <= lo <= hi or not 0 < low_degree <= high_degree or not sweep.k or sweep.count < 0:
            raise ValueError(f"sweep {sweep.name!r} in {path} has an empty or invalid range")
        sweeps[sweep.name] = sweep
    logger.debug(f"Loaded {len(sweeps)} sweeps from {path}")
    return sweeps


@dataclass
class InstanceChecks:
    """Collects report lines for one graph."""

    instance: str
    lines: List[ReportLine] = field(default_factory=list)

    def record(self, check: str, problems: Optional[List[str]]) -> None:
        """None means skipped; an empty list means passed."""
        if problems is None:
            status = SKIP
        elif problems:
            status = FAIL
            for problem in problems[:5]:
                logger.warning(f"{check} on {self.instance}: {problem}")
            if len(problems) > 5:
                logger.warning(f"{check} on {self.instance}: {len(problems) - 5} more problems")
        else:
            status = PASS
        self.lines.append(ReportLine(check, self.instance, status))


def _brute_agreement(graph: Graph, budget: int) -> Optional[List[str]]:
    if graph.n > budget:
        return None
    problems = []
    for s, t in combinations(graph.nodes(), 2):
        by_enumeration = enumerate_kappa(graph, s, t)
        by_flow = kappa(graph, s, t).kappa
        if by_enumeration != by_flow:
            problems.append(f"({s}, {t}): enumeration {by_enumeration}, flow {by_flow}")
    return problems


def _sparsifier(graph: Graph, k: int) -> List[str]:
    certificate = ni_certificate(graph, k)
    problems = []
    if graph.n and certificate.m > (k + 1) * (graph.n - 1):
        problems.append(f"{certificate.m} edges exceed (k+1)(n-1) = {(k + 1) * (graph.n - 1)}")
    for s, t in combinations(graph.nodes(), 2):
        in_g = kappa(graph, s, t, cap=k + 1).kappa
        result = kappa(certificate, s, t, cap=k + 1)
        if min(in_g, k) != min(result.kappa, k):
            problems.append(f"({s}, {t}): kappa {in_g} in G but {result.kappa} in the certificate")
        if result.cut is not None and not validate_cut(graph, s, t, result.cut):
            problems.append(f"({s}, {t}): certificate cut {result.cut.describe()!r} does not separate in G")
    return problems


def _equivalence(oracle: CutOracle, graph: Graph, k: int, budget: int) -> List[str]:
    report = oracle_equivalence(oracle, graph, k, budget=budget)
    logger.debug(f"{report.pairs_checked} pairs, {report.cuts_checked} cuts checked")
    return report.mismatches


def _round_trip(build: Callable[[], CutOracle], graph: Graph) -> List[str]:
    first, second = build(), build()
    data = dumps(first)
    problems = []
    if data != dumps(second):
        problems.append("two builds serialize differently")
    restored = loads(data)
    for s in graph.nodes():
        for t in graph.nodes():
            if s != t and restored.query_cut(s, t) != first.query_cut(s, t):
                problems.append(f"({s}, {t}): answer changed after reload")
    return problems


def _tight_intersections(graph: Graph, k: int) -> Optional[List[str]]:
    if graph.n > TIGHT_SET_MAX_NODES:
        return None
    tight = enumerate_tight_sets(graph, k)
    problems = []
    for a_set, b_set in combinations(tight, 2):
        problems.extend(check_tight_intersections(graph, k, a_set, b_set).violations)
    return problems


def _uncrossing(graph: Graph) -> Optional[List[str]]:
    if graph.n > UNCROSSING_MAX_NODES:
        return None
    problems = []
    for s, a, b in uncrossing_triples(graph):
        if a == b:
            continue
        try:
            a_set, b_set = minimal_tight_set(graph, s, a), minimal_tight_set(graph, s, b)
        except FlowError as e:
            problems.append(f"({s}, {a}, {b}): {e}")
            continue
        for report in (check_uncrossing(graph, s, a, b, a_set, b_set),
                       check_minimal_uncrossing(graph, s, a, b)):
            problems.extend(f"({s}, {a}, {b}): {v}" for v in report.violations)
    return problems


def verify_instance(graph: Graph,
                    k: int,
                    instance: str,
                    budget: int = ENUMERATION_MAX_NODES,
                    workers: int = 1,
                    lemmas: bool = True) -> List[ReportLine]:
    """
    Run every check that applies to one graph.

    Checks: brute-force agreement (n <= budget), certificate preservation,
    general oracle equivalence and round trip, and when the graph is
    k-connected the same for the k-connected oracle plus its query
    condition; with `lemmas`, the tight-set lemma suites at small n.

    Returns:
        One ReportLine per check, SKIP where a check does not apply
    """
    checks = InstanceChecks(instance)
    logger.info(f"Checking {instance}: n={graph.n}, m={graph.m}, k={k}")

    checks.record("brute-agreement", _brute_agreement(graph, budget))
    checks.record("sparsifier", _sparsifier(graph, k))

    general = build_general(graph, k, workers=workers)
    checks.record("general-equivalence", _equivalence(general, graph, k, budget))
    checks.record("general-bounds", general.bound_violations())
    checks.record("general-round-trip", _round_trip(lambda: build_general(graph, k, workers=workers), graph))

    kconn: Optional[KConnOracle] = None
    try:
        kconn = build_kconn(graph, k, verify=True, workers=workers)
    except NotKConnectedError as e:
        logger.info(f"{instance}: k-connected checks skipped ({e})")

    if kconn is None:
        for name in ("kconn-equivalence", "kconn-round-trip", "query-lemma", "tight-intersections"):
            checks.record(name, None)
    else:
        checks.record("kconn-equivalence", _equivalence(kconn, graph, k, budget))
        checks.record("kconn-round-trip", _round_trip(lambda: build_kconn(graph, k, verify=False), graph))
        checks.record("query-lemma", check_query_lemma(kconn, graph).violations)
        checks.record("tight-intersections", _tight_intersections(graph, k) if lemmas else None)

    checks.record("uncrossing", _uncrossing(graph) if lemmas else None)
    return checks.lines


def run_corpus(entries: List[CorpusEntry],
               budget: int = ENUMERATION_MAX_NODES,
               workers: int = 1,
               max_attempts: int = 100,
               lemmas: bool = True,
               progress: Optional[Callable[[str], None]] = None) -> List[ReportLine]:
    """Verify every corpus entry; `progress` is called with each entry name when done."""
    lines: List[ReportLine] = []
    for entry in entries:
        graph = entry.build_graph(max_attempts)
        lines.extend(verify_instance(graph, entry.k, entry.name, budget, workers, lemmas))
        if progress is not None:
            progress(entry.name)
    return lines
