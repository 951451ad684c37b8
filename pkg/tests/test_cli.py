"""
Tests for the command-line interface.
"""
import os

import click
import pytest
from click.testing import CliRunner

from vconn_oracle.cli.main import _setting, cli, format_answer, main
from vconn_oracle.core.generators import bridged_cliques
from vconn_oracle.core.graph import read_graph
from vconn_oracle.core.kconn_oracle import build_kconn


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner, config_path):
    """Run a command with an isolated config file."""
    def run(*args, **kwargs):
        return runner.invoke(cli, ["-c", config_path, *args], **kwargs)
    return run


def _lines(result, prefix):
    return [line for line in result.output.splitlines() if line.startswith(prefix)]


@pytest.fixture
def c5_oracle(invoke, graph_file, c5, tmp_path):
    path = graph_file(c5, "c5.graph")
    out = str(tmp_path / "c5.oracle")
    result = invoke("build", "--mode", "kconn", "-k", "2", path, "-o", out)
    assert result.exit_code == 0, result.output
    return out


def test_build_reports_cuts(invoke, graph_file, c5, tmp_path):
    """Test that building C5 with k = 2 stores five cuts and no forests."""
    path = graph_file(c5, "c5.graph")
    result = invoke("build", "--mode", "kconn", "-k", "2", path)
    assert result.exit_code == 0, result.output
    assert os.path.exists(str(tmp_path / "c5.oracle"))
    summary = [line for line in _lines(result, str(tmp_path / "c5.oracle")) if "\t" in line]
    assert "cuts=5" in summary[0]
    assert "forests=0" in summary[0]


def test_build_not_k_connected(invoke, graph_file, c5):
    """Test exit code 3 when the graph is below k."""
    path = graph_file(c5, "c5.graph")
    result = invoke("build", "--mode", "kconn", "-k", "4", path)
    assert result.exit_code == 3
    assert "not 4-connected" in result.output


def test_build_parse_error(invoke, tmp_path):
    """Test exit code 2 for a malformed graph file."""
    path = tmp_path / "bad.graph"
    path.write_text("3 2\n0 1\n0 zz\n")
    result = invoke("build", "-k", "1", str(path))
    assert result.exit_code == 2
    assert "line 3" in result.output


def test_build_non_utf8_graph(invoke, tmp_path):
    """Test exit code 2 for a graph file that is not UTF-8."""
    path = tmp_path / "binary.graph"
    path.write_bytes(b"\xff\xfe3 2\n")
    result = invoke("build", "-k", "1", str(path))
    assert result.exit_code == 2
    assert "not valid UTF-8" in result.output
    assert "Traceback" not in result.output


def test_query_incident_cut(invoke, c5_oracle):
    """Test the C5 answer for pair 0 2."""
    result = invoke("query", c5_oracle, "0", "2")
    assert result.exit_code == 0, result.output
    assert _lines(result, "0 2 ") == ["0 2 CUT 2 E(0,1) E(0,4)"]


def test_query_con(invoke, graph_file, k5, tmp_path):
    """Test that every K5 pair is CON for k = 3."""
    out = str(tmp_path / "k5.oracle")
    assert invoke("build", "-k", "3", graph_file(k5), "-o", out).exit_code == 0
    result = invoke("query", out, "0", "1", "3", "4")
    assert _lines(result, "0 1") == ["0 1 CON"]
    assert _lines(result, "3 4") == ["3 4 CON"]


def test_query_from_stdin_and_file(invoke, c5_oracle, tmp_path):
    """Test the two batch sources."""
    result = invoke("query", c5_oracle, input="0 2\n# comment\n\n1 3\n")
    assert result.exit_code == 0, result.output
    assert len(_lines(result, "0 2 CUT")) == 1
    assert len(_lines(result, "1 3 CUT")) == 1

    pairs = tmp_path / "pairs.txt"
    pairs.write_text("2 4\n")
    result = invoke("query", c5_oracle, "--pairs-file", str(pairs), "--workers", "2")
    assert _lines(result, "2 4 ") == ["2 4 CUT 2 E(1,2) E(2,3)"]


@pytest.mark.parametrize("args", [["0", "9"], ["1", "1"], ["0"]])
def test_query_bad_pairs(invoke, c5_oracle, args):
    """Test exit code 1 for out-of-range, equal or unpaired nodes."""
    result = invoke("query", c5_oracle, *args)
    assert result.exit_code == 1


def test_query_unknown_version(invoke, c5_oracle):
    """Test exit code 1 for an oracle file of a newer format."""
    with open(c5_oracle, "r+b") as f:
        f.seek(4)
        f.write(b"\x63\x00")
    result = invoke("query", c5_oracle, "0", "2")
    assert result.exit_code == 1
    assert "unsupported oracle version" in result.output


def test_general_mode_disconnected(invoke, graph_file, two_edges, tmp_path):
    """Test a general oracle answering with an empty cut."""
    out = str(tmp_path / "two.oracle")
    assert invoke("build", "--mode", "general", "-k", "1", graph_file(two_edges), "-o", out).exit_code == 0
    result = invoke("query", out, "0", "2", "0", "1")
    assert _lines(result, "0 2 ") == ["0 2 CUT 0"]
    assert _lines(result, "0 1 ") == ["0 1 CUT 1 E(0,1)"]


def test_stats(invoke, c5_oracle):
    """Test the machine-readable stats line."""
    result = invoke("stats", c5_oracle)
    assert result.exit_code == 0, result.output
    line = _lines(result, "cuts=")[0]
    # All ten C5 pairs have kappa = 2 = k
    assert line.startswith("cuts=5\ttrivial=10\t")


def test_stats_general_counts_pairs_within_k(invoke, graph_file, b6, tmp_path):
    """Test that stats reports the pairs at or below k for a general oracle."""
    path = graph_file(b6, "b6.graph")
    out = str(tmp_path / "b6.oracle")
    assert invoke("build", "--mode", "general", "-k", "3", path, "-o", out).exit_code == 0
    result = invoke("stats", out)
    assert result.exit_code == 0, result.output
    # Exactly the 36 pairs split between the two cliques, bridges included
    assert "\ttrivial=36\t" in _lines(result, "cuts=")[0]


def test_bench(invoke, c5_oracle):
    """Test a small benchmark run."""
    result = invoke("bench", c5_oracle, "--pairs", "200", "--seed", "1", "--workers", "2")
    assert result.exit_code == 0, result.output
    assert _lines(result, "n=5\tk=2\tpairs=200\tns_per_query=")


def test_gen_bridged_cliques(invoke):
    """Test that gen emits the B6 graph: 12 nodes, 33 edges."""
    result = invoke("gen", "bridged-cliques", "6", "3")
    assert result.exit_code == 0, result.output
    assert "12 33" in result.output.splitlines()


def test_gen_to_file_with_connectivity(invoke, tmp_path):
    """Test gnp with a connectivity floor written to a file."""
    out = str(tmp_path / "g.graph")
    result = invoke("gen", "gnp", "10", "0.5", "3", "--connectivity", "2", "-o", out)
    assert result.exit_code == 0, result.output
    assert read_graph(out).min_degree() >= 2


def test_gen_bad_arguments(invoke):
    """Test exit code 1 for a family given the wrong arguments."""
    assert invoke("gen", "cycle").exit_code == 1


@pytest.mark.parametrize("args", [
    ("cycle", "--", "-3"),
    ("gnp", "10", "1.5", "1"),
    ("hypercube", "--", "-1"),
])
def test_gen_out_of_range_arguments(invoke, args):
    """Test that out-of-range sizes and probabilities are usage errors."""
    result = invoke("gen", *args)
    assert result.exit_code == 1
    assert "Traceback" not in result.output


def test_gen_zero_cube(invoke):
    """Test that the 0-cube is a single node."""
    result = invoke("gen", "hypercube", "0")
    assert result.exit_code == 0, result.output
    assert "1 0" in result.output.splitlines()


def test_sparsify(invoke, graph_file, tmp_path):
    """Test that the certificate of B6 for k = 1 has at most 2(n - 1) edges."""
    path = graph_file(bridged_cliques(6, 3))
    out = str(tmp_path / "sparse.graph")
    result = invoke("sparsify", path, "-k", "1", "-o", out)
    assert result.exit_code == 0, result.output
    assert read_graph(out).m <= 2 * 11


def test_verify_graph(invoke, graph_file, c5):
    """Test the TSV report for a single graph."""
    result = invoke("verify", graph_file(c5, "c5.graph"), "-k", "2", "--no-lemmas")
    assert result.exit_code == 0, result.output
    rows = [line.split("\t") for line in result.output.splitlines() if line.count("\t") == 2]
    assert ["kconn-equivalence", "c5.graph", "PASS"] in rows
    assert ["general-equivalence", "c5.graph", "PASS"] in rows


def test_verify_needs_graph_or_corpus(invoke):
    """Test the usage error when nothing is given to verify."""
    assert invoke("verify").exit_code == 1


def test_verify_corpus_subset(invoke):
    """Test the corpus runner restricted to two entries."""
    result = invoke("verify", "--corpus", "--only", "c5", "--only", "k4")
    assert result.exit_code == 0, result.output
    instances = {line.split("\t")[1] for line in result.output.splitlines() if line.count("\t") == 2}
    assert instances == {"c5", "k4"}


def test_verify_sweep_entry(invoke):
    """Test running one named entry of a seeded sweep."""
    result = invoke("verify", "--sweep", "kconn", "--only", "prism-10", "--no-lemmas")
    assert result.exit_code == 0, result.output
    rows = [line.split("\t") for line in result.output.splitlines() if line.count("\t") == 2]
    assert ["kconn-equivalence", "prism-10", "PASS"] in rows


def test_verify_unknown_sweep(invoke):
    """Test the usage error for a sweep the corpus does not define."""
    result = invoke("verify", "--sweep", "nonexistent")
    assert result.exit_code == 1
    assert "unknown sweeps: nonexistent" in result.output


def test_verify_mismatch_exit_code(invoke, graph_file, c5):
    """Test exit code 4 when a check fails."""
    from vconn_oracle.core.verify import ReportLine

    failing = [ReportLine("kconn-equivalence", "c5", "FAIL")]
    with pytest.MonkeyPatch.context() as mp:
        mp.setattr("vconn_oracle.cli.main.verify_instance", lambda *a, **k: failing)
        result = invoke("verify", graph_file(c5), "-k", "2")
    assert result.exit_code == 4


def test_format_answer(b6):
    """Test the query line for a vertex cut."""
    oracle = build_kconn(b6, 3)
    assert format_answer(oracle, 3, 9) == "3 9 CUT 3 0 1 2"
    assert format_answer(oracle, 3, 4) == "3 4 CON"


def test_main_maps_usage_errors_to_one(config_path):
    """Test that click usage errors exit with code 1."""
    with pytest.raises(SystemExit) as excinfo:
        main(["-c", config_path, "build"])
    assert excinfo.value.code == 1


def test_main_success_exit_code(config_path):
    """Test a clean run through main()."""
    with pytest.raises(SystemExit) as excinfo:
        main(["-c", config_path, "version"])
    assert excinfo.value.code == 0


def test_setting_prefers_explicit_value():
    """Test option-over-config resolution with fallback to defaults."""
    ctx = click.Context(cli, obj={"CONFIG": {"workers": 4}})
    assert _setting(ctx, "workers") == 4
    assert _setting(ctx, "workers", 2) == 2
    assert _setting(ctx, "enumeration_max_nodes") == 12
    assert _setting(ctx, "nonexistent") is None
