"""
Independent oracles and executable lemma checks.

Nothing here is fast. Every function recomputes from definitions so that
the oracles can be compared against something that shares no code path
with them beyond the Graph type.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, List, Optional, Protocol, Sequence, Tuple

from .flow import Cut, kappa, minimal_tight_set
from .graph import Graph, NodeSet, boundary, is_small, is_tight, node_complement
from .kconn_oracle import KConnOracle

logger = logging.getLogger(__name__)

ENUMERATION_MAX_NODES = 12


class InvalidCutError(ValueError):
    """A cut was checked against a pair it contains."""


class CutOracle(Protocol):
    k: int
    n: int
    cut_list: Sequence[Cut]

    def query_con(self, s: int, t: int) -> bool: ...

    def query_cut(self, s: int, t: int) -> Optional[int]: ...

    def pairs_within_k(self) -> int: ...

    def space_entries(self) -> int: ...


# ---------------------------------------------------------------------------
# Brute force


def enumerate_kappa(graph: Graph, s: int, t: int, cap: Optional[int] = None) -> int:
    """Smallest mixed st-cut by trying vertex subsets in increasing size."""
    if s == t:
        raise ValueError("s and t must differ")
    adjacent = graph.has_edge(s, t)
    cut_edges = [(s, t)] if adjacent else []
    others = [v for v in graph.nodes() if v not in (s, t)]
    limit = len(others) if cap is None else min(len(others), cap)

    for size in range(limit + 1):
        total = size + (1 if adjacent else 0)
        if cap is not None and total >= cap:
            return cap
        for removed in combinations(others, size):
            if not graph.connected(s, t, removed, cut_edges):
                return total
    # Only reachable with a cap: everything tried below it fails.
    return cap if cap is not None else len(others) + (1 if adjacent else 0)


def brute_kappa(graph: Graph,
                s: int,
                t: int,
                method: str = "auto",
                budget: int = ENUMERATION_MAX_NODES,
                cap: Optional[int] = None) -> int:
    """
    Exact k(s,t) from an independent computation.

    Args:
        graph: The graph
        s: First node
        t: Second node
        method: "enumerate", "flow", or "auto" (enumerate while n <= budget)
        budget: Largest n the enumeration is attempted on
        cap: When given, return min(k(s,t), cap)

    Returns:
        k(s,t), counting the edge st when the pair is adjacent
    """
    if method not in ("auto", "enumerate", "flow"):
        raise ValueError(f"unknown method {method!r}")
    if method == "flow" or graph.n > budget:
        if method == "enumerate":
            logger.warning(f"n={graph.n} exceeds enumeration budget {budget}; using flow")
        return kappa(graph, s, t, cap=cap).kappa
    return enumerate_kappa(graph, s, t, cap=cap)


def validate_cut(graph: Graph, s: int, t: int, cut: Cut) -> bool:
    """True iff deleting the cut leaves no st-path."""
    if s in cut.vertices or t in cut.vertices:
        raise InvalidCutError(f"cut {cut.describe()!r} contains an endpoint of ({s}, {t})")
    return not graph.connected(s, t, cut.vertices, cut.edges)


# ---------------------------------------------------------------------------
# Lemma checks


@dataclass
class LemmaReport:
    fired: List[str] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)
    case: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not self.violations


def enumerate_tight_sets(graph: Graph, k: int) -> List[NodeSet]:
    """All tight sets, by subset enumeration (n <= 10 is practical)."""
    nodes = list(graph.nodes())
    found = []
    for size in range(1, graph.n):
        for members in combinations(nodes, size):
            candidate = frozenset(members)
            if is_tight(graph, candidate, k):
                found.append(candidate)
    return found


def check_tight_intersections(graph: Graph, k: int, a_set: Iterable[int], b_set: Iterable[int]) -> LemmaReport:
    """
    Intersections of tight sets in a k-connected graph.

    If A & B* and B & A* are both non-empty they are both tight; if A, B are
    small and intersect, A & B is tight.
    """
    A, B = frozenset(a_set), frozenset(b_set)
    report = LemmaReport()
    a_star, b_star = node_complement(graph, A), node_complement(graph, B)

    left, right = A & b_star, B & a_star
    if left and right:
        report.fired.append("crossing-complements")
        for name, part in (("A&B*", left), ("B&A*", right)):
            if not is_tight(graph, part, k):
                report.violations.append(f"{name}={sorted(part)} is not tight")

    if is_small(graph, A, k) and is_small(graph, B, k) and A & B:
        report.fired.append("small-intersection")
        if not is_tight(graph, A & B, k):
            report.violations.append(f"A&B={sorted(A & B)} is not tight")
    return report


def is_st_tight(graph: Graph, nodes: Iterable[int], s: int, t: int, value: int) -> bool:
    """s in A, t in A*, |dA| = value."""
    A = frozenset(nodes)
    return s in A and t in node_complement(graph, A) and len(boundary(graph, A)) == value


def check_uncrossing(graph: Graph,
                     s: int,
                     a: int,
                     b: int,
                     a_set: Iterable[int],
                     b_set: Iterable[int]) -> LemmaReport:
    """
    Classify an sa-tight A and an sb-tight B with k(s,a) >= k(s,b).

    Exactly one of the cases ia, ib, ii, iii must match; the tightness
    conclusions of the matched case are then checked.
    """
    A, B = frozenset(a_set), frozenset(b_set)
    k_sa, k_sb = kappa(graph, s, a).kappa, kappa(graph, s, b).kappa
    if k_sa < k_sb:
        raise ValueError(f"need kappa(s,a) >= kappa(s,b), got {k_sa} < {k_sb}")
    if not is_st_tight(graph, A, s, a, k_sa) or not is_st_tight(graph, B, s, b, k_sb):
        raise ValueError("A must be sa-tight and B sb-tight")

    a_star, b_star = node_complement(graph, A), node_complement(graph, B)
    d_a, d_b = boundary(graph, A), boundary(graph, B)
    both_star = a_star & b_star

    cases = {
        "ia": a in both_star,
        "ib": a not in both_star and b in both_star,
        "ii": a in (a_star & B) and b in (b_star & A),
        "iii": (a in d_b and b in (b_star & A))
        or (b in d_a and a in (a_star & B))
        or (a in d_b and b in d_a),
    }
    report = LemmaReport(fired=[name for name, hit in cases.items() if hit])
    if len(report.fired) != 1:
        report.violations.append(f"expected exactly one case, matched {report.fired or 'none'}")
        return report
    report.case = report.fired[0]

    if report.case == "ia":
        if k_sa != k_sb:
            report.violations.append(f"kappa(s,a)={k_sa} differs from kappa(s,b)={k_sb}")
        expectations = [(A & B, s, a, k_sa), (A | B, s, a, k_sa), (A & B, s, b, k_sb)]
    elif report.case == "ib":
        expectations = [(A & B, s, a, k_sa), (A | B, s, b, k_sb)]
    elif report.case == "ii":
        expectations = [(a_star & B, a, s, k_sa), (b_star & A, b, s, k_sb)]
    else:
        expectations = []

    for part, x, y, value in expectations:
        if not is_st_tight(graph, part, x, y, value):
            report.violations.append(f"{sorted(part)} is not {x}{y}-tight with value {value}")
    return report


def check_minimal_uncrossing(graph: Graph, s: int, a: int, b: int) -> LemmaReport:
    """
    With A = R_sa, B = R_sb and k(s,a) >= k(s,b) one of these holds:
    A <= B; R_as < B and R_bs < A; a in dB or b in dA.
    """
    A, B = minimal_tight_set(graph, s, a), minimal_tight_set(graph, s, b)
    if kappa(graph, s, a).kappa < kappa(graph, s, b).kappa:
        raise ValueError("need kappa(s,a) >= kappa(s,b)")
    r_as, r_bs = minimal_tight_set(graph, a, s), minimal_tight_set(graph, b, s)

    report = LemmaReport()
    if A <= B:
        report.fired.append("nested")
    if r_as < B and r_bs < A:
        report.fired.append("reversed-inside")
    if a in boundary(graph, B) or b in boundary(graph, A):
        report.fired.append("boundary")
    if not report.fired:
        report.violations.append(f"no case holds for s={s}, a={a}, b={b}")
    return report


def uncrossing_triples(graph: Graph) -> Iterator[Tuple[int, int, int]]:
    """(s, a, b) with a, b non-adjacent to s and k(s,a) >= k(s,b)."""
    values = {}
    for s in graph.nodes():
        for t in graph.nodes():
            if t != s and not graph.has_edge(s, t):
                values[s, t] = kappa(graph, s, t).kappa
    for s in graph.nodes():
        targets = [t for t in graph.nodes() if (s, t) in values]
        for a in targets:
            for b in targets:
                if values[s, a] >= values[s, b]:
                    yield s, a, b


# ---------------------------------------------------------------------------
# Oracle sweeps


@dataclass
class EquivalenceReport:
    pairs_checked: int = 0
    cuts_checked: int = 0
    mismatches: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def oracle_equivalence(oracle: CutOracle,
                       graph: Graph,
                       k: int,
                       method: str = "auto",
                       budget: int = ENUMERATION_MAX_NODES) -> EquivalenceReport:
    """
    Compare every ordered pair's answers with the brute-force value.

    The con answer must equal k(s,t) >= k+1, and a returned cut must
    separate the pair in the original graph with size min(k(s,t), k).
    Brute-force values are capped at k+1, which decides both.
    """
    report = EquivalenceReport()
    for s in graph.nodes():
        for t in graph.nodes():
            if s == t:
                continue
            report.pairs_checked += 1
            value = brute_kappa(graph, s, t, method=method, budget=budget, cap=k + 1)
            con = oracle.query_con(s, t)
            if con != (value >= k + 1):
                report.mismatches.append(f"({s}, {t}): con={con} but kappa={value}")
                continue
            cut_id = oracle.query_cut(s, t)
            if con:
                if cut_id is not None:
                    report.mismatches.append(f"({s}, {t}): cut {cut_id} returned for a CON pair")
                continue
            if cut_id is None:
                report.mismatches.append(f"({s}, {t}): no cut for kappa={value}")
                continue
            cut = oracle.cut_list[cut_id]
            report.cuts_checked += 1
            try:
                valid = validate_cut(graph, s, t, cut)
            except InvalidCutError as e:
                report.mismatches.append(f"({s}, {t}): {e}")
                continue
            if not valid:
                report.mismatches.append(f"({s}, {t}): cut {cut.describe()!r} does not separate")
            elif cut.size != min(value, k):
                report.mismatches.append(
                    f"({s}, {t}): cut size {cut.size} but kappa={value}, k={k}"
                )
    return report


def check_query_lemma(oracle: KConnOracle, graph: Graph) -> LemmaReport:
    """
    On a KConnOracle: for non-adjacent s, t outside K, one of the two
    laminar conditions holds iff k(s,t) = k.
    """
    report = LemmaReport()
    outside = [v for v in graph.nodes() if v not in oracle.degree_k]
    for s in outside:
        for t in outside:
            if s >= t or graph.has_edge(s, t):
                continue
            holds = any(
                record is not None and oracle.complement_holds(record, y)
                for record, y in ((oracle.records.get(s), t), (oracle.records.get(t), s))
            )
            exact = kappa(graph, s, t, cap=oracle.k + 1).kappa == oracle.k
            if holds != exact:
                report.violations.append(f"({s}, {t}): conditions={holds}, kappa==k is {exact}")
    report.fired.append("query-lemma")
    return report


# ---------------------------------------------------------------------------
# Report lines


@dataclass(frozen=True)
class ReportLine:
    check: str
    instance: str
    status: str

    def render(self) -> str:
        return f"{self.check}\t{self.instance}\t{self.status}"


def format_report(lines: Iterable[ReportLine]) -> str:
    return "\n".join(line.render() for line in lines)
