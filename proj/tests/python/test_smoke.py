import io
import json
from pathlib import Path

import networkx as nx
import pytest

import strongnet

FIXTURE = Path(__file__).resolve().parents[2] / "fixtures" / "coreboot.fm"


def coreboot():
    return strongnet.load_formula(str(FIXTURE))


def test_dimacs_round_trip():
    f = strongnet.parse_dimacs("c 1 A\np cnf 2 1\n1 -2 0\n")
    assert f.num_vars == 2
    assert f.clauses == [[1, -2]]
    assert f.names == {1: "A"}
    assert strongnet.parse_dimacs(strongnet.emit_dimacs(f)) == f


def test_parse_error_carries_line():
    with pytest.raises(strongnet.ParseError, match="line 2"):
        strongnet.parse_dimacs("p cnf 1 1\n2 0\n")


def test_solve_and_backbone():
    f = strongnet.CnfFormula(2, [[-1, 2]])
    assert strongnet.solve(f, [1]) == [1, 2]
    assert strongnet.solve(strongnet.CnfFormula(1, [[1], [-1]])) is None
    assert strongnet.count_models(f) == 3
    assert strongnet.backbone(strongnet.CnfFormula(2, [[1, 2], [-1]])) == [-1, 2]


def test_void_model():
    with pytest.raises(strongnet.VoidModelError):
        strongnet.strong_graphs(strongnet.CnfFormula(1, [[1], [-1]]))


def test_coreboot_hubs():
    summary = strongnet.analyze(coreboot(), "coreboot")
    assert summary["max_in_degree"]["features"] == ["HAVE_VBE_LINEAR_FRAMEBUFFER"]
    assert summary["max_out_degree"]["features"] == ["NO_GFX_INIT"]
    assert summary["core"] == ["COREBOOT", "GRAPHICS_INIT", "FRAMEBUFFER_MODE"]


def test_relations_match_oracle():
    f = coreboot()
    assert strongnet.strong_relations(f, jobs=4) == strongnet.oracle_relations(f)


def test_graphml_loads_in_networkx():
    f = coreboot()
    g = strongnet.strong_graphs(f)
    graph = nx.read_graphml(io.BytesIO(g.export("graphml").encode()))
    labels = {data["label"]: node for node, data in graph.nodes(data=True)}
    assert len(labels) == len(g.nodes)
    relations = [d["relation"] for _, _, d in graph.edges(data=True)]
    assert relations.count("requires") == len(g.dep_arcs)
    assert relations.count("excludes") == len(g.conflict_edges)
    assert graph.has_edge(labels["NO_GFX_INIT"], labels["HAVE_VBE_LINEAR_FRAMEBUFFER"])


def test_dot_and_json_exports():
    g = strongnet.strong_graphs(coreboot())
    dot = g.export("dot")
    assert dot.startswith("digraph")
    assert "NO_GFX_INIT -> HAVE_VBE_LINEAR_FRAMEBUFFER" in dot
    doc = json.loads(g.export("json"))
    assert doc == g.to_json()
    with pytest.raises(strongnet.InvalidArgument):
        g.export("svg")


def test_validate_clean_graphs():
    f = coreboot()
    report = strongnet.validate(f, strongnet.strong_graphs(f), sample=1000, seed=3)
    assert report["passed"]
    assert report["discrepancies"] == []


def test_statistics():
    assert strongnet.median_and_coverage(list(range(1, 101))) == (50.5, 3.0, 98.0)
    assert strongnet.spearman_rho([1, 2, 3, 4], [10, 10, 20, 30]) == pytest.approx(0.9486832980505138, abs=1e-12)
    assert strongnet.spearman_rho([1, 2, 3], [1, 2, 3]) is None
    w = strongnet.wilcoxon([2, 3, 4, 5, 6, 7], [1] * 6)
    assert abs(w["p_value"] - 1 / 64) <= 0.01
    assert w["effect"] == "large"


def test_corpus(tmp_path):
    (tmp_path / "a.cnf").write_text("p cnf 3 2\n1 0\n-2 3 0\n")
    (tmp_path / "b.fm").write_text(FIXTURE.read_text())
    (tmp_path / "bad.cnf").write_text("garbage\n")
    (tmp_path / "m.csv").write_text(
        "id,path,format,domain\na,a.cnf,dimacs,os\nb,b.fm,fm,os\nbad,bad.cnf,dimacs,os\n"
    )
    analysed, failed = strongnet.analyze_corpus(str(tmp_path / "m.csv"), str(tmp_path / "out"), jobs=2)
    assert (analysed, failed) == (2, 1)
    corpus = (tmp_path / "out" / "corpus.csv").read_text().splitlines()
    assert corpus[0].startswith("id,domain,num_vars")
    assert len(corpus) == 3
    assert (tmp_path / "out" / "b" / "graphs.graphml").exists()
