"""
the command line: output, exit statuses and JSON reports
"""

import json

import jsonschema
import pytest

from fairway.__main__ import main
from fairway.FairwayApiWrapper import loadReportSchema
from fairway.Pathway import printPathway, loadExamplePathway

PROPERTIES = "reachC: AF C\nkeepD: AG D\nneverC: AG !C\n"


@pytest.fixture
def files(tmp_path):
    pathway = tmp_path / "four.pw"
    pathway.write_text(printPathway(loadExamplePathway()))
    properties = tmp_path / "four.actl"
    properties.write_text(PROPERTIES)
    return tmp_path, str(pathway), str(properties)


def test_validate(files, capsys):
    _, pathway, _ = files
    assert main(["validate", pathway]) == 0
    assert capsys.readouterr().out == "ok\n"


def test_validate_normal_form(tmp_path, capsys):
    path = tmp_path / "bad.pw"
    path.write_text("R1: A + B -> C\n")
    assert main(["validate", str(path)]) == 3
    assert "reaction R1 has 2 reactant(s) but 1 product(s)" in capsys.readouterr().out


def test_components(files, capsys):
    _, pathway, _ = files
    assert main(["components", pathway]) == 0
    assert capsys.readouterr().out == "A: A, B, C\nD: D\n"


def test_graph(files):
    tmp_path, pathway, _ = files
    out = tmp_path / "four.dot"
    assert main(["graph", pathway, "-o", str(out)]) == 0
    assert out.read_text() == 'digraph {\n  "A";\n  "D";\n  "D" -> "A";\n}\n'


def test_graph_dot(files, capsys):
    _, pathway, _ = files
    assert main(["graph", pathway, "--dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph {\n")
    assert '"D" -> "A";' in out


def test_lts(files, capsys):
    _, pathway, _ = files
    assert main(["lts", pathway, "--dump"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "states=3 edges=4 deadlocks=0"
    assert len(lines) == 5


def test_state_cap(files, capsys, monkeypatch):
    _, pathway, _ = files
    assert main(["lts", pathway, "--state-cap", "2"]) == 4
    monkeypatch.setenv("FAIRWAY_STATE_CAP", "2")
    assert main(["lts", pathway]) == 4
    assert "state budget" in capsys.readouterr().err


def test_project(files, capsys):
    _, pathway, _ = files
    assert main(["project", pathway, "--onto", "A"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# projection onto A\n")
    assert out.endswith("init: A\n")


def test_check(files, capsys):
    _, pathway, properties = files
    assert main(["check", pathway, properties]) == 1
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "reachC: true"
    assert out[1] == "keepD: true"
    assert out[2] == "neverC: false"


def test_check_formula(files, capsys):
    _, pathway, _ = files
    assert main(["check", pathway, "-f", "AF C"]) == 0
    assert capsys.readouterr().out == "formula: true\n"
    assert main(["check", pathway, "-f", "AF C", "--no-fairness"]) == 1


def test_check_projection(files, capsys):
    _, pathway, _ = files
    assert main(["check", pathway, "-f", "AF C", "--onto", "A"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("formula: false on A (inconclusive for complete model)\n")


def test_check_projection_true(files, capsys):
    "truth on a projection carries over"
    _, pathway, _ = files
    assert main(["check", pathway, "-f", "AG D", "--onto", "D"]) == 0
    assert capsys.readouterr().out == "formula: true on D (holds in complete model, preserved by projection)\n"


def test_disable(files, capsys):
    "disabling the catalyst falsifies AF C and proves AG !C"
    _, pathway, _ = files
    assert main(["check", pathway, "-f", "AF C", "-f", "AG !C", "--disable", "D", "--json"]) == 1
    reports = json.loads(capsys.readouterr().out)
    assert [r["verdict"] for r in reports] == [False, True]


def test_json(files, capsys):
    _, pathway, properties = files
    assert main(["check", pathway, properties, "--json"]) == 1
    reports = json.loads(capsys.readouterr().out)
    schema = loadReportSchema()
    for report in reports:
        jsonschema.validate(instance=report, schema=schema)
    assert [r["property"] for r in reports] == ["reachC", "keepD", "neverC"]
    assert reports[0]["scope"] == "complete model"
    assert reports[0]["fairness"] is True
    assert reports[0]["conclusive_for_complete_model"] is True
    assert reports[0]["states"] == 3
    assert reports[2]["witness"]["labels"] == ["R3"]
    assert reports[2]["witness"]["loop"] is None


def test_plan(files, capsys):
    tmp_path, pathway, properties = files
    plan = tmp_path / "four.plan"
    plan.write_text("reachC: A\nkeepD: D\nneverC: *\ncompanion reachC: neverC\ncombine: reachC and keepD\n")
    assert main(["check", pathway, properties, "--plan", str(plan)]) == 1
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "reachC: false on A (inconclusive for complete model)"
    assert out[-1] == "combine: reachC and keepD"


def test_plan_excludes_onto(files, capsys):
    tmp_path, pathway, properties = files
    plan = tmp_path / "four.plan"
    plan.write_text("reachC: A\n")
    assert main(["check", pathway, properties, "--plan", str(plan), "--onto", "D"]) == 2
    assert "--onto" in capsys.readouterr().err


def test_export_smv(files, capsys):
    _, pathway, _ = files
    assert main(["export-smv", pathway]) == 0
    assert capsys.readouterr().out.count("COMPASSION") == 4
    assert main(["export-smv", pathway, "--onto", "A"]) == 0
    assert capsys.readouterr().out.count("COMPASSION") == 0


def test_necessity(files, capsys):
    _, pathway, _ = files
    assert main(["necessity", pathway, "-f", "AF C"]) == 0
    assert capsys.readouterr().out == "A formula: necessary\nD formula: necessary\n"


def test_generate(tmp_path):
    out = tmp_path / "cascade.pw"
    assert main(["generate", "-o", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# kinase cascade, 57 stages\n")
    assert "act0: K0 -> K0* [L]" in text


@pytest.mark.parametrize(
    "argv, status",
    [
        (["check", "PATHWAY", "-f", "AF C", "--onto", "Q"], 2),
        (["check", "PATHWAY"], 2),
        (["check", "PATHWAY", "-f", "AF &"], 3),
        (["check", "PATHWAY", "-f", "AF Q"], 3),
        (["validate", "missing.pw"], 2),
        (["frobnicate"], 2),
    ],
)
def test_error_statuses(files, capsys, argv, status):
    _, pathway, _ = files
    assert main([pathway if a == "PATHWAY" else a for a in argv]) == status


def test_parse_error_status(tmp_path, capsys):
    path = tmp_path / "broken.pw"
    path.write_text("A -> B [D\n")
    assert main(["lts", str(path)]) == 3
    assert "line 1, column 8" in capsys.readouterr().err


def test_bad_plan(files, capsys):
    tmp_path, pathway, properties = files
    plan = tmp_path / "bad.plan"
    plan.write_text("undefined: A\n")
    assert main(["check", pathway, properties, "--plan", str(plan)]) == 3
