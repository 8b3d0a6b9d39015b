"""End-to-end CLI behavior: subcommands, exit codes, JSON reports."""

import json

import pytest

from mmtw.cli import main
from mmtw.formats import parse_td, serialize_hypergraph, serialize_td
from mmtw.generate import (complete_graph, cycle_graph, path_graph,
                           random_decomposition, rng_from_seed)
from mmtw.decomposition import validate, width


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stats_and_json_schema(files, capsys):
    hg = files("p3.hg", serialize_hypergraph(path_graph(3)))
    code, out, err = run(capsys, "stats", hg, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["status"] == "ok"
    assert doc["n"] == 3 and doc["m"] == 2


def test_trace_example(files, capsys):
    hg = files("p3.hg", serialize_hypergraph(path_graph(3)))
    code, out, _ = run(capsys, "trace", "-S", "1,3", hg, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["members"] == [[], [1, 3]]


def test_solve_mwis_example(files, capsys):
    hg = files("p3.hg", serialize_hypergraph(path_graph(3)))
    td = files("p3.td", "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n")
    code, out, _ = run(capsys, "solve", "--problem", "mwis", hg, td, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == "2" and doc["witness"] == [1, 3]


def test_solve_refuted_exit_code(files, capsys):
    c5 = cycle_graph(5)
    hg = files("c5.hg", serialize_hypergraph(c5))
    rng = rng_from_seed(1)
    td = files("c5.td", serialize_td(random_decomposition(rng, c5), 5))
    code, out, _ = run(capsys, "solve", "--problem", "color", "-k", "2",
                       hg, td, "--json")
    assert code == 10
    assert json.loads(out)["status"] == "refuted"
    k2 = files("k2.hg", serialize_hypergraph(complete_graph(2)))
    code, out, _ = run(capsys, "solve", "--problem", "hom", hg, td,
                       "--target", k2, "--json")
    assert code == 10


def test_decompose_revalidates_as_separate_invocations(files, capsys, tmp_path):
    k8 = complete_graph(8)
    hg = files("k8.hg", serialize_hypergraph(k8))
    out_td = str(tmp_path / "k8.td")
    code, out, _ = run(capsys, "decompose", "-k", "1", hg, "-o", out_td)
    assert code == 0
    code, _, _ = run(capsys, "validate", hg, out_td, "--json")
    assert code == 0
    code, out, _ = run(capsys, "width", hg, out_td, "--measure", "mu", "--json")
    assert code == 0
    assert json.loads(out)["width"] <= 10


def test_decompose_json_payload_validates(files, capsys):
    c5 = cycle_graph(5)
    hg = files("c5.hg", serialize_hypergraph(c5))
    code, out, _ = run(capsys, "decompose", "-k", "2", hg, "--json")
    assert code == 0
    doc = json.loads(out)
    t = parse_td(doc["payload"])
    assert validate(c5, t)
    assert width(c5, t, "mu").width <= doc["width_bound"] == 33


def test_invalid_input_exit_code(files, capsys):
    hg = files("bad.hg", "p hg 3 1\ne 1 4\n")
    code, out, err = run(capsys, "stats", hg, "--json")
    assert code == 2
    assert json.loads(out)["status"] == "invalid-input"
    assert "line 2" in err


def test_resource_exit_code(files, capsys):
    hg = files("k8.hg", serialize_hypergraph(complete_graph(8)))
    code, out, _ = run(capsys, "trace", "-S", "1,2,3", hg,
                       "--caps", "nodes=1", "--json")
    assert code == 20
    assert json.loads(out)["status"] == "resource-exceeded"


def test_reduce_outputs_parse(files, capsys):
    hg = files("p3.hg", serialize_hypergraph(path_graph(3)))
    from mmtw.formats import parse_hypergraph
    code, out, _ = run(capsys, "reduce", hg, "l2", "--json")
    assert code == 0
    doc = json.loads(out)
    g = parse_hypergraph(doc["payload"])
    assert g.n == 2 and len(g.edges) == 1
    assert "c map 1 edge 1 2" in doc["payload"]
    code, out, _ = run(capsys, "reduce", hg, "m", "--json")
    assert code == 0
    g2 = parse_hypergraph(json.loads(out)["payload"])
    assert g2.n == 6 and len(g2.edges) == 5


def test_selftest_deterministic(files, capsys):
    code, out1, _ = run(capsys, "selftest", "--seed", "7", "--json")
    assert code == 0
    code, out2, _ = run(capsys, "selftest", "--seed", "7", "--json")
    assert out1 == out2


def test_bad_caps_rejected(files, capsys):
    hg = files("p3.hg", serialize_hypergraph(path_graph(3)))
    code, _, _ = run(capsys, "trace", "-S", "1", hg, "--caps", "bogus=3")
    assert code == 2
