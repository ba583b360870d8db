import json
from itertools import combinations

import pytest
from click.testing import CliRunner
from hypothesis import given, settings
from hypothesis import strategies as st

from bergelab.catalog import build_catalog, verify_record
from bergelab.cli import main, parse_duration
from bergelab.core import Graph, Hypergraph, complete_graph
from bergelab.formats import (
    ParseError,
    dumps,
    graph_from_graph6,
    graph_to_graph6,
    graph_to_obj,
    hypergraph_to_obj,
    parse_graph,
    parse_hypergraph,
)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def test_parse_json_triangle():
    assert parse_graph('{"n":3,"edges":[[0,1],[1,2],[0,2]]}') == complete_graph(3)


def test_graph6_example_round_trip():
    G = parse_graph("D?{")
    assert G.n == 5
    assert graph_to_graph6(G) == "D?{"


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_graph6_round_trip(G):
    assert graph_from_graph6(graph_to_graph6(G)) == G
    assert parse_graph(dumps(graph_to_obj(G))) == G


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.lists(st.integers(0, n - 1), min_size=3, max_size=3, unique=True), max_size=8))))
def test_hypergraph_json_round_trip(data):
    n, edges = data
    H = Hypergraph(n, tuple(edges), frozenset({3}))
    assert parse_hypergraph(dumps(hypergraph_to_obj(H))) == H


@pytest.mark.parametrize("text,where", [
    ('{"n":3,"edges":[[0,0]]}', "$.edges[0]"),
    ('{"n":3,"edges":[[0,1],[1,0]]}', "$.edges[1]"),
    ('{"n":3,"edges":[[0,3]]}', "$.edges[0]"),
    ('{"n":3,"edges":[[0,true]]}', "$.edges[0]"),
    ('{"n":3}', "$"),
    ('{"n":3,\n "edges":[[0,1],]}', "line 2"),
])
def test_graph_parse_errors(text, where):
    with pytest.raises(ParseError) as err:
        parse_graph(text)
    assert where in str(err.value)


@pytest.mark.parametrize("text,where", [
    ('{"n":4,"R":[3],"edges":[[0,1]]}', "$.edges[0]"),
    ('{"n":4,"edges":[[0,1,2],[2,1,0]]}', "$.edges[1]"),
    ('{"n":4,"edges":[[0,1,1]]}', "$.edges[0]"),
    ('{"n":4,"R":[1],"edges":[]}', "$.R"),
])
def test_hypergraph_parse_errors(text, where):
    with pytest.raises(ParseError) as err:
        parse_hypergraph(text)
    assert where in str(err.value)


def test_bad_graph6():
    with pytest.raises(ParseError):
        parse_graph("~~~~")


def test_parse_duration():
    assert parse_duration("60s") == 60
    assert parse_duration("2m") == 120
    assert parse_duration("250ms") == 0.25
    assert parse_duration("3") == 3


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return write


def run(*args, stdin=None):
    return CliRunner().invoke(main, list(args), input=stdin)


def test_cli_shadow(files):
    h = files("h.json", {"n": 4, "edges": [[1, 2, 3]]})
    res = run("shadow", "-H", h)
    assert res.exit_code == 0
    out = json.loads(res.stdout)
    assert out["edges"] == [[1, 2], [1, 3], [2, 3]]
    assert [1, 2, [0]] in out["covering"]


def test_cli_berge_and_stdin(files):
    h = files("h.json", {"n": 4, "edges": [[1, 2, 3]]})
    res = run("berge", "-H", h, "-G", "-", stdin='{"n":2,"edges":[[0,1]]}')
    assert res.exit_code == 0
    out = json.loads(res.stdout)
    assert out["contains"] is True and out["certificate"]["f"] == {"0": 0}


def test_cli_berge_budget_exit_code(files):
    edges = [[a, b, c] for a, b, c in combinations(range(9), 3) if (a + b + c) % 3 == 0]
    h = files("h.json", {"n": 9, "edges": edges})
    g = files("g.json", {"n": 6, "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 0], [0, 3]]})
    res = run("berge", "-H", h, "-G", g, "--nodes", "1")
    assert res.exit_code == 3
    assert json.loads(res.stdout)["status"] == "Unknown"


def test_cli_parse_error_exit_code(files):
    g = files("g.json", '{"n":3,"edges":[[0,0]]}')
    res = run("classify", "-G", g)
    assert res.exit_code == 2
    assert res.stdout == ""
    assert "self-loop" in res.stderr


def test_cli_classify_and_density(files):
    g = files("g.json", {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]})
    out = json.loads(run("classify", "-G", g, "--json").stdout)
    assert out["degenerate"] is True and out["blowup"]["holds"] is True
    k4 = files("k4.json", graph_to_obj(complete_graph(4)))
    out = json.loads(run("density", "-G", k4, "-k", "3").stdout)
    assert out["exact"] == "2/3"


def test_cli_subgraph_and_blowup(files):
    c5 = files("c5.json", {"n": 5, "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]})
    k3 = files("k3.json", "Bw")
    out = json.loads(run("subgraph", "-i", c5, "-G", k3).stdout)
    assert out["contains"] is False
    out = json.loads(run("blowup-contains", "-G", k3, "-i", k3, "--sizes", "3,3,3",
                         "--matching-edges", "0-1").stdout)
    assert out["contains"] is True


def test_cli_construct(files):
    out = json.loads(run("construct", "h1", "-n", "8").stdout)
    assert len(out["edges"]) == 8 and out["labels"]["a1"] == 0
    res = run("construct", "h1", "-n", "6")
    assert res.exit_code == 2
    out = json.loads(run("construct", "turan", "-n", "6", "-k", "3", "-t", "3").stdout)
    assert len(out["edges"]) == 8
    k3 = files("k3.json", "Bw")
    out = json.loads(run("construct", "blowup", "-G", k3, "--sizes", "2,2,2").stdout)
    assert len(out["edges"]) == 12
    star = files("star.json", {"n": 4, "edges": [[0, 1], [0, 2], [0, 3]]})
    out = json.loads(run("construct", "split", "-G", star).stdout)
    assert len(out["edges"]) == 3


def test_cli_shrink(files):
    h = files("h.json", {"n": 8, "R": [4], "edges": [[0, 1, 2, 3], [4, 5, 6, 7]]})
    out = json.loads(run("shrink", "-H", h, "-m", "3").stdout)
    assert out["shadow_after"] == 6 and out["guarantee"] == "6"
    out = json.loads(run("construct", "shrink", "-H", h, "-m", "3", "--seed", "1").stdout)
    assert out["R"] == [3]


def test_cli_exact(files):
    g = files("c3.json", "Bw")
    res = run("exact", "-n", "4", "-R", "3", "-G", g, "--threads", "1")
    assert res.exit_code == 0
    out = json.loads(res.stdout)
    assert out["value"] == 5 and out["status"] == "Exact"
    res = run("exact", "-n", "6", "-R", "3", "-G", g, "--threads", "1", "--nodes", "3")
    assert res.exit_code == 3
    assert json.loads(res.stdout)["status"] == "LowerBoundOnly"


def test_catalog_counts_and_idempotence(tmp_path):
    path = str(tmp_path / "cat.jsonl")
    assert build_catalog(4, path) == 11
    first = open(path, "rb").read()
    assert first.endswith(b"\n") and b"\r" not in first
    assert build_catalog(4, path) == 11
    assert open(path, "rb").read() == first
    lines = first.decode().splitlines()
    recs = [json.loads(line) for line in lines]
    assert len({r["canonical"] for r in recs}) == 11
    assert recs == sorted(recs, key=lambda r: (r["n"], r["canonical"]))
    assert all(verify_record(r) for r in recs)
    assert build_catalog(1, str(tmp_path / "one.jsonl")) == 1
    with pytest.raises(ValueError):
        build_catalog(8, path)


def test_catalog_records_on_six_vertices_verify(tmp_path):
    path = str(tmp_path / "cat6.jsonl")
    assert build_catalog(6, path) == 156
    with open(path) as fh:
        recs = [json.loads(line) for line in fh]
    assert all(verify_record(r) for r in recs)
    tampered = dict(recs[-1], degenerate=not recs[-1]["degenerate"])
    assert not verify_record(tampered)


def test_cli_catalog(tmp_path):
    path = str(tmp_path / "c.jsonl")
    out = json.loads(run("catalog", "--max-n", "3", "-o", path).stdout)
    assert out["records"] == 4
