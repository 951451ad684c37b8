"""
Rich tables for build accounting, oracle statistics, benchmarks and
verification summaries.
"""
from collections import Counter
from typing import Iterable, List, Optional, Tuple

from rich.console import Console
from rich.table import Table

from ..core.general_oracle import GeneralOracle
from ..core.kconn_oracle import KConnOracle
from ..core.verify import ReportLine

# Tables go to stderr so stdout stays machine-readable.
console = Console(stderr=True)

Row = Tuple[str, str, str]


def _bound(value: int, limit: int) -> str:
    mark = "[green]ok[/green]" if value <= limit else "[red]exceeded[/red]"
    return f"<= {limit} {mark}"


def oracle_rows(oracle, trivial_cuts: Optional[int] = None) -> List[Row]:
    """(quantity, value, bound) rows describing a built oracle."""
    k, n = oracle.k, oracle.n
    rows: List[Row] = [
        ("mode", "kconn" if isinstance(oracle, KConnOracle) else "general", ""),
        ("k", str(k), ""),
        ("n", str(n), ""),
    ]
    if isinstance(oracle, KConnOracle):
        rows += [
            ("degree-k nodes |K|", str(len(oracle.degree_k)), ""),
            ("critical edges |F|", str(len(oracle.critical_cuts)), _bound(len(oracle.critical_cuts), max(n - 1, 0))),
            ("nodes with R_s |S|", str(len(oracle.records)), ""),
            ("laminar forests", str(len(oracle.forests)), _bound(len(oracle.forests), 2 * k + 1)),
            ("stored cuts", str(len(oracle.cut_list)), _bound(len(oracle.cut_list), 2 * n)),
        ]
    elif isinstance(oracle, GeneralOracle):
        rows += [
            ("adjacent-pair cuts", str(oracle.adjacent_cut_count), _bound(oracle.adjacent_cut_count, (k + 1) * n)),
            ("non-adjacent cuts", str(oracle.nonadjacent_cut_count),
             _bound(oracle.nonadjacent_cut_count, (2 * k + 1) * n)),
            ("max sets per source", str(oracle.max_sets_per_source), _bound(oracle.max_sets_per_source, 2 * k + 1)),
            ("stored cuts", str(len(oracle.cut_list)), _bound(len(oracle.cut_list), (3 * k + 2) * n)),
        ]
    if trivial_cuts is not None:
        rows.append(("one cut per pair", str(trivial_cuts), ""))
    entries = oracle.space_entries()
    per_kn = entries / (k * n) if n else 0.0
    rows.append(("space entries", str(entries), f"{per_kn:.1f} per k*n"))
    return rows


def display_oracle(oracle, title: str = "Oracle", trivial_cuts: Optional[int] = None) -> None:
    table = Table(title=title)
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", justify="right")
    table.add_column("Bound")
    for row in oracle_rows(oracle, trivial_cuts):
        table.add_row(*row)
    console.print(table)


def display_bench(n: int, k: int, pairs: int, seconds: float, con_count: int, workers: int) -> None:
    table = Table(title="Query benchmark")
    table.add_column("n", justify="right")
    table.add_column("k", justify="right")
    table.add_column("pairs", justify="right")
    table.add_column("threads", justify="right")
    table.add_column("CON", justify="right")
    table.add_column("total (s)", justify="right")
    table.add_column("ns / query", justify="right", style="green")
    per_query = seconds / pairs * 1e9 if pairs else 0.0
    table.add_row(str(n), str(k), str(pairs), str(workers), str(con_count), f"{seconds:.3f}", f"{per_query:.0f}")
    console.print(table)


def display_report_summary(lines: Iterable[ReportLine]) -> None:
    """Status counts per check."""
    counts = Counter((line.check, line.status) for line in lines)
    checks = sorted({check for check, _ in counts})
    table = Table(title="Verification")
    table.add_column("Check", style="cyan")
    for status, style in (("PASS", "green"), ("FAIL", "red"), ("SKIP", "dim")):
        table.add_column(status, justify="right", style=style)
    for check in checks:
        table.add_row(check, *(str(counts[check, status]) for status in ("PASS", "FAIL", "SKIP")))
    console.print(table)
