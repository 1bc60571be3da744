import json
import subprocess
import sys

import pydot
import pytest

from conftest import FIG, TAU4, sub
from substitution_graphs.cli import RunConfig, analyze, main
from substitution_graphs.config_graph import configuration_graph
from substitution_graphs.formats import (
    ParseError,
    bipartite_dot,
    configuration_dot,
    parse_graph,
    parse_substitution,
    render_graph,
    render_substitution,
)
from substitution_graphs.words import letter_token


def test_parse_examples():
    assert parse_substitution("0 -> 1 0\n1 -> 0") == TAU4
    assert parse_substitution("a -> a").alphabet == ("a",)
    s = parse_substitution("# comment\nformat: tokens\nx1 -> x1 y\ny -> x1\n")
    assert s.image("x1") == ("x1", "y")


@pytest.mark.parametrize("text, fragment", [
    ("1 -> 2", "unknown letter"),
    ("a -> ", "empty image"),
    ("a -> a\na -> aa", "duplicate"),
    ("a = b", "expected"),
    ("ab -> a", "single-character"),
    ("", "no rules"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_substitution(text)


def test_render_roundtrip_compact_and_tokens():
    for s in (TAU4, FIG):
        assert parse_substitution(render_substitution(s)) == s
    letters = [letter_token(i) for i in range(1, 14)]
    big = sub({a: a + letters[(i + 1) % 13] if len(a) == 1 else a for i, a in enumerate(letters)})
    text = render_substitution(big)
    assert text.startswith("format: tokens")
    assert parse_substitution(text) == big


def test_graph_parse_and_render():
    g = parse_graph("left a\nright x\nleft b\nedge a x\nedge b x\nedge a x\n")
    assert g.order == (("left", "a"), ("right", "x"), ("left", "b"))
    assert g.multiplicity()[("a", "x")] == 2
    assert parse_graph(render_graph(g)) == g
    for bad in ("left a\nleft a", "left a\nright x\nedge a y", "vertex a"):
        with pytest.raises(ParseError):
            parse_graph(bad)


def test_bipartite_dot_parses():
    g = parse_graph("left a\nright x\nedge a x\nedge a x\n")
    graphs = pydot.graph_from_dot_data(bipartite_dot(g))
    assert len(graphs) == 1
    assert len(graphs[0].get_edges()) == 2
    dot = configuration_dot(configuration_graph(FIG))
    parsed = pydot.graph_from_dot_data(dot)[0]
    assert len(parsed.get_edges()) == 3
    for label in ("12", "211", "21", "112"):
        assert label in dot


def test_analyze_tau4_json_keys():
    report = analyze(TAU4)
    assert set(report) == {"primitive", "prefix_free", "postfix_free", "segregating", "graphs",
                           "subfixing_power", "basic_generators", "configuration_graph", "verdict"}
    assert report["segregating"]["left"]["least"] == 1
    assert report["segregating"]["right"]["least"] == 2
    assert [n for n, g in report["graphs"].items() if g["subfixed"]] == ["rl"]
    assert report["subfixing_power"]["power"] == 2
    json.dumps(report)


def test_analyze_fig_and_tau_e():
    r = analyze(FIG)
    assert len(r["configuration_graph"]["edges"]) == 3
    assert r["verdict"]["kind"] == "aperiodic"
    r = analyze(sub({"a": "c", "b": "c", "c": "db", "d": "ca"}))
    assert r["configuration_graph"]["unsupported"] == "NotPrefixFree"
    assert r["segregating"]["left"]["least"] is None
    assert r["segregating"]["left"]["bound"] == 8


def test_cli_analyze_text(fixtures_dir, capsys):
    assert main(["analyze", str(fixtures_dir / "tau4.sub")]) == 0
    out = capsys.readouterr().out
    assert "least left segregating number: 1" in out
    assert "least right segregating number: 2" in out
    assert "subfixing power: 2" in out
    assert main(["analyze", str(fixtures_dir / "tau_e.sub")]) == 0
    out = capsys.readouterr().out
    assert "not found up to 8" in out and "Unsupported(NotPrefixFree)" in out


def test_cli_realize_goldens(fixtures_dir, capsys):
    for name in ("didactic", "w_example", "e_example"):
        assert main(["realize", str(fixtures_dir / f"{name}.graph")]) == 0
        out = capsys.readouterr().out
        assert out == (fixtures_dir / f"{name}.expected").read_text()


def test_cli_realize_trace(fixtures_dir, capsys):
    assert main(["realize", "--trace", str(fixtures_dir / "didactic.graph")]) == 0
    out = capsys.readouterr().out
    assert "# case Z" in out


def test_cli_exit_codes(fixtures_dir, tmp_path, capsys):
    single = str(fixtures_dir / "single_edge.graph")
    assert main(["realize", single]) == 1
    assert "clause (ii)" in capsys.readouterr().err
    assert main(["verify", single]) == 1
    assert main(["verify", str(fixtures_dir / "e_example.graph")]) == 0
    assert main(["verify", str(fixtures_dir / "didactic.graph")]) == 0
    bad = tmp_path / "bad.sub"
    bad.write_text("1 -> 2\n")
    assert main(["analyze", str(bad)]) == 2
    assert main(["analyze", str(tmp_path / "missing.sub")]) == 2
    assert main(["analyze", "--power-bound", "0", str(fixtures_dir / "tau4.sub")]) == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_cli_graphs(fixtures_dir, capsys):
    assert main(["graphs", str(fixtures_dir / "tau4.sub"), "rs"]) == 0
    dot = capsys.readouterr().out
    parsed = pydot.graph_from_dot_data(dot)[0]
    assert parsed.get_type() == "digraph"
    assert len(parsed.get_edges()) == 4
    assert main(["graphs", str(fixtures_dir / "tau_e.sub"), "ls"]) == 1
    assert main(["graphs", str(fixtures_dir / "tau_e.sub"), "config"]) == 1
    capsys.readouterr()
    assert main(["graphs", "--format", "json", str(fixtures_dir / "z_figure.sub"), "config"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["edges"]) == 3


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("analyze", "x", power_bound=0)
    with pytest.raises(ValueError):
        RunConfig("analyze", "x", max_ext=-1)


def test_module_entry_point(fixtures_dir):
    done = subprocess.run([sys.executable, "-m", "substitution_graphs", "realize",
                           str(fixtures_dir / "e_example.graph")],
                          capture_output=True, text=True, check=False)
    assert done.returncode == 0
    assert "0 -> 251113403422251" in done.stdout
