#!/usr/bin/env python3
"""
vconn-oracle: command-line entry point.

Builds, stores, queries, verifies and benchmarks vertex-connectivity
oracles, and generates test graphs.

Exit codes: 0 success, 1 usage, 2 graph parse error, 3 not k-connected,
4 verification mismatch.
"""
import logging
import os
import sys
import time
from typing import Any, Iterable, List, Optional, Tuple

import click
import numpy as np
from rich.console import Console
from rich.logging import RichHandler
from rich.progress import Progress

from vconn_oracle import __version__
from vconn_oracle.core.corpus import FAIL, load_corpus, load_sweeps, run_corpus, verify_instance
from vconn_oracle.core.general_oracle import build_general
from vconn_oracle.core.generators import FAMILIES, ConnectivityNotReached, describe, generate
from vconn_oracle.core.graph import Graph, GraphFormatError, emit_graph, read_graph, write_graph
from vconn_oracle.core.kconn_oracle import NotKConnectedError, build_kconn
from vconn_oracle.core.sparsifier import ni_certificate
from vconn_oracle.core.verify import CutOracle, format_report
from vconn_oracle.db.oracle_store import OracleFormatError, load_oracle, save_oracle
from vconn_oracle.utils.config import CONFIG_PATH, DEFAULT_CONFIG, load_config
from vconn_oracle.utils.display import display_bench, display_oracle, display_report_summary
from vconn_oracle.utils.parallel import ordered_map

# Set up logging; stdout carries command output only
logging.basicConfig(
    level=logging.INFO,
    format="%(message)s",
    datefmt="[%X]",
    handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True)],
)

logger = logging.getLogger("vconn_oracle")
console = Console(stderr=True)

EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_NOT_K_CONNECTED = 3
EXIT_MISMATCH = 4


class CommandError(click.ClickException):
    """A user-facing failure with its own exit code."""

    def __init__(self, message: str, exit_code: int = EXIT_USAGE):
        super().__init__(message)
        self.exit_code = exit_code


def _setting(ctx: click.Context, key: str, value: Any = None) -> Any:
    """An explicit option value, else the configured one."""
    if value is not None:
        return value
    return ctx.obj["CONFIG"].get(key, DEFAULT_CONFIG.get(key))


def _load_graph(path: str) -> Graph:
    try:
        return read_graph(path)
    except GraphFormatError as e:
        raise CommandError(f"{path}: {e}", EXIT_PARSE) from e


def _load_oracle(path: str) -> CutOracle:
    try:
        return load_oracle(path)
    except OracleFormatError as e:
        raise CommandError(f"{path}: {e}", EXIT_USAGE) from e


def _parse_pairs(lines: Iterable[str], source: str) -> List[Tuple[int, int]]:
    pairs = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if len(fields) != 2:
                raise ValueError
            pairs.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise CommandError(f"{source} line {line_no}: expected 's t', got {raw.strip()!r}")
    return pairs


def format_answer(oracle: CutOracle, s: int, t: int) -> str:
    """'s t CON' or 's t CUT <size> <members>'."""
    cut_id = oracle.query_cut(s, t)
    if cut_id is None:
        return f"{s} {t} CON"
    cut = oracle.cut_list[cut_id]
    return " ".join(part for part in (f"{s} {t} CUT {cut.size}", cut.describe()) if part)


@click.group()
@click.option('--debug/--no-debug', default=False, help='Enable debug logging.')
@click.option('--config-path', '-c', default=CONFIG_PATH, help='Path to configuration file.')
@click.pass_context
def cli(ctx, debug, config_path):
    """vconn-oracle: constant-time vertex-connectivity queries."""
    ctx.ensure_object(dict)
    ctx.obj['CONFIG'] = config = load_config(config_path)
    ctx.obj['DEBUG'] = debug

    level = logging.DEBUG if debug else config.get("log_level", "INFO")
    logger.setLevel(level)
    logging.getLogger().setLevel(level)


@cli.command()
@click.argument('graph_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--mode', type=click.Choice(['kconn', 'general']), default='kconn', show_default=True,
              help='kconn needs a k-connected graph; general accepts any graph.')
@click.option('-k', 'k', type=int, required=True, help='Connectivity threshold.')
@click.option('--output', '-o', type=click.Path(dir_okay=False),
              help='Oracle file to write (default: GRAPH_FILE with .oracle suffix).')
@click.option('--verify/--no-verify', default=None,
              help='Check k-connectivity over all pairs first (kconn; default on for small graphs).')
@click.option('--workers', type=int, help='Threads for the flow sweeps.')
@click.pass_context
def build(ctx, graph_file, mode, k, output, verify, workers):
    """Build an oracle for GRAPH_FILE and save it."""
    graph = _load_graph(graph_file)
    workers = _setting(ctx, "workers", workers)
    output = output or os.path.splitext(graph_file)[0] + ".oracle"

    started = time.perf_counter()
    try:
        if mode == 'kconn':
            if verify is None:
                verify = graph.n <= _setting(ctx, "verify_max_nodes")
            oracle = build_kconn(graph, k, verify=verify, workers=workers)
        else:
            oracle = build_general(graph, k, workers=workers)
    except NotKConnectedError as e:
        raise CommandError(str(e), EXIT_NOT_K_CONNECTED) from e
    except ValueError as e:
        raise CommandError(str(e), EXIT_USAGE) from e
    elapsed = time.perf_counter() - started

    size = save_oracle(oracle, output)
    display_oracle(oracle, title=f"{mode} oracle for {os.path.basename(graph_file)}")
    click.echo(f"{output}\t{mode}\tk={k}\tn={graph.n}\tcuts={len(oracle.cut_list)}"
               f"\tforests={len(getattr(oracle, 'forests', ()))}\tentries={oracle.space_entries()}\tbytes={size}")
    logger.info(f"Built in {elapsed:.2f}s")


@cli.command()
@click.argument('oracle_file', type=click.Path(exists=True, dir_okay=False))
@click.argument('nodes', nargs=-1, type=int)
@click.option('--pairs-file', type=click.File('r'), help='File with one "s t" pair per line.')
@click.option('--workers', type=int, help='Threads for batch queries.')
@click.pass_context
def query(ctx, oracle_file, nodes, pairs_file, workers):
    """Answer queries for s t pairs given as NODES, a file, or stdin."""
    oracle = _load_oracle(oracle_file)
    if nodes:
        if len(nodes) % 2:
            raise CommandError(f"pairs need an even number of nodes, got {len(nodes)}")
        pairs = list(zip(nodes[0::2], nodes[1::2]))
    elif pairs_file is not None:
        pairs = _parse_pairs(pairs_file, pairs_file.name)
    else:
        pairs = _parse_pairs(click.get_text_stream('stdin'), "stdin")

    for s, t in pairs:
        if not (0 <= s < oracle.n and 0 <= t < oracle.n) or s == t:
            raise CommandError(f"bad pair ({s}, {t}) for n={oracle.n}")

    answers = ordered_map(lambda pair: format_answer(oracle, *pair), pairs, _setting(ctx, "workers", workers))
    for line in answers:
        click.echo(line)


@cli.command()
@click.argument('oracle_file', type=click.Path(exists=True, dir_okay=False))
def stats(oracle_file):
    """Show cut counts and space usage against their bounds."""
    oracle = _load_oracle(oracle_file)
    # Pairs a one-cut-per-pair structure would store a cut for.
    trivial = oracle.pairs_within_k()
    display_oracle(oracle, title=os.path.basename(oracle_file), trivial_cuts=trivial)
    click.echo(f"cuts={len(oracle.cut_list)}\ttrivial={trivial}\tentries={oracle.space_entries()}"
               f"\tbytes={os.path.getsize(oracle_file)}")


@cli.command()
@click.argument('graph_file', required=False, type=click.Path(exists=True, dir_okay=False))
@click.option('-k', 'k', type=int, help='Connectivity threshold for GRAPH_FILE.')
@click.option('--corpus', 'use_corpus', is_flag=True, help='Run the seed corpus instead of one graph.')
@click.option('--corpus-file', type=click.Path(exists=True, dir_okay=False), help='Alternative corpus YAML.')
@click.option('--only', multiple=True, help='Restrict the corpus to these entry names.')
@click.option('--sweep', 'sweeps', multiple=True, help='Add the entries of a seeded sweep from the corpus file.')
@click.option('--lemmas/--no-lemmas', default=True, help='Run the tight-set lemma suites.')
@click.option('--budget', type=int, help='Largest n for exhaustive brute force.')
@click.option('--workers', type=int, help='Threads for oracle builds.')
@click.pass_context
def verify(ctx, graph_file, k, use_corpus, corpus_file, only, sweeps, lemmas, budget, workers):
    """Check oracles against brute force; prints a tab-separated report."""
    budget = _setting(ctx, "enumeration_max_nodes", budget)
    workers = _setting(ctx, "workers", workers)

    if use_corpus or corpus_file or sweeps:
        entries = load_corpus(corpus_file) if use_corpus or corpus_file else []
        if sweeps:
            available = load_sweeps(corpus_file)
            unknown = set(sweeps) - set(available)
            if unknown:
                raise CommandError(f"unknown sweeps: {', '.join(sorted(unknown))}")
            for name in sweeps:
                entries.extend(available[name].entries())
        if only:
            unknown = set(only) - {e.name for e in entries}
            if unknown:
                raise CommandError(f"unknown corpus entries: {', '.join(sorted(unknown))}")
            entries = [e for e in entries if e.name in only]
        with Progress(console=console, transient=True) as progress:
            task = progress.add_task("Verifying corpus", total=len(entries))
            lines = run_corpus(
                entries,
                budget=budget,
                workers=workers,
                max_attempts=_setting(ctx, "gnp_max_attempts"),
                lemmas=lemmas,
                progress=lambda name: progress.advance(task),
            )
    else:
        if graph_file is None or k is None:
            raise CommandError("give GRAPH_FILE and -k, or --corpus or --sweep")
        graph = _load_graph(graph_file)
        lines = verify_instance(graph, k, os.path.basename(graph_file), budget, workers, lemmas)

    click.echo(format_report(lines))
    display_report_summary(lines)
    failures = sum(1 for line in lines if line.status == FAIL)
    if failures:
        raise CommandError(f"{failures} checks failed", EXIT_MISMATCH)


@cli.command()
@click.argument('oracle_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--pairs', 'count', type=int, help='Number of random pairs.')
@click.option('--seed', type=int, help='Random seed for the pairs.')
@click.option('--workers', type=int, help='Threads sharing the batch.')
@click.pass_context
def bench(ctx, oracle_file, count, seed, workers):
    """Time con queries on random pairs."""
    oracle = _load_oracle(oracle_file)
    count = _setting(ctx, "bench_pairs", count)
    seed = _setting(ctx, "bench_seed", seed)
    workers = max(1, _setting(ctx, "workers", workers))
    n = oracle.n
    if n < 2:
        raise CommandError("benchmark needs at least two nodes")
    if count < 1:
        raise CommandError("--pairs must be positive")

    rng = np.random.default_rng(seed)
    sources = rng.integers(0, n, size=count)
    targets = (sources + rng.integers(1, n, size=count)) % n
    batches = [
        list(zip(s.tolist(), t.tolist()))
        for s, t in zip(np.array_split(sources, workers), np.array_split(targets, workers))
    ]

    def run(batch: List[Tuple[int, int]]) -> int:
        query_con = oracle.query_con
        return sum(1 for s, t in batch if query_con(s, t))

    started = time.perf_counter()
    con_count = sum(ordered_map(run, batches, workers))
    elapsed = time.perf_counter() - started

    display_bench(n, oracle.k, count, elapsed, con_count, workers)
    click.echo(f"n={n}\tk={oracle.k}\tpairs={count}\tns_per_query={elapsed / count * 1e9:.1f}")


@cli.command()
@click.argument('family', type=click.Choice(sorted(FAMILIES)))
@click.argument('args', nargs=-1)
@click.option('--connectivity', type=int, default=0, help='gnp: retry seeds until this connectivity holds.')
@click.option('--output', '-o', type=click.Path(dir_okay=False), help='Write here instead of stdout.')
@click.pass_context
def gen(ctx, family, args, connectivity, output):
    """Generate a graph: complete N, cycle N, path N, star N, petersen,
    wheel N, hypercube D, prism R, bridged-cliques C B, gnp N P SEED."""
    try:
        graph = generate(family, list(args), connectivity, _setting(ctx, "gnp_max_attempts"))
    except (ValueError, ConnectivityNotReached) as e:
        raise CommandError(str(e)) from e
    logger.info(describe(graph, family))
    if output:
        write_graph(graph, output)
    else:
        click.echo(emit_graph(graph), nl=False)


@cli.command()
@click.argument('graph_file', type=click.Path(exists=True, dir_okay=False))
@click.option('-k', 'k', type=int, required=True, help='Connectivity threshold.')
@click.option('--output', '-o', type=click.Path(dir_okay=False), help='Write here instead of stdout.')
def sparsify(graph_file, k, output):
    """Reduce a graph to at most (k+1)(n-1) edges, keeping connectivity up to k+1."""
    graph = _load_graph(graph_file)
    try:
        certificate = ni_certificate(graph, k)
    except ValueError as e:
        raise CommandError(str(e)) from e
    if output:
        write_graph(certificate, output)
    else:
        click.echo(emit_graph(certificate), nl=False)


@cli.command()
def version():
    """Display the version information."""
    console.print(f"[bold]vconn-oracle[/bold] version [cyan]{__version__}[/cyan]")


def main(argv: Optional[List[str]] = None) -> None:
    """Main entry point."""
    try:
        rv = cli.main(args=argv, obj={}, standalone_mode=False)
    except click.UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except click.Abort:
        click.echo("Aborted!", err=True)
        sys.exit(EXIT_USAGE)
    sys.exit(rv if isinstance(rv, int) else 0)


if __name__ == "__main__":
    main()
