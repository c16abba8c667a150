import csv
import io
import json
from pathlib import Path

import jsonschema
import pytest

from curved_nbody.cli import main

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(argv, capsys):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue(), capsys.readouterr().err


def run_json(argv, capsys, name):
    code, out, err = run(argv, capsys)
    assert code == 0, err
    data = json.loads(out)
    jsonschema.validate(data, schema(name))
    return data


def test_classify_five(capsys):
    data = run_json(["classify", "--family", "five", "--positions", "0.5,0.8"], capsys,
                    "region_verdict")
    assert data["case"] == "BothInside" and data["exists"] is False
    assert data["certificate"]["valid"] is True


@pytest.mark.parametrize("family,positions", [("five", "2,3"), ("five", "0.5,3"),
                                              ("seven", "0.5,0.8,1.5"), ("seven", "0.3,0.5,0.7"),
                                              ("n", "0.2,0.4,0.6,0.8"), ("n", "0.5,1.5,3")])
def test_classify_schema(family, positions, capsys):
    run_json(["classify", "--family", family, "--positions", positions], capsys,
             "region_verdict")


def test_solve_five_exact(capsys):
    data = run_json(["solve", "--family", "five", "--a", "2", "--r", "3"], capsys,
                    "mass_solution")
    assert data["residual_max"] < 1e-10
    assert data["masses"]["mu"] == pytest.approx(-4.50221911, rel=1e-8)


def test_solve_five_paper_and_seven(capsys):
    data = run_json(["solve", "--family", "five", "--a", "2", "--r", "3", "--mu", "1",
                     "--method", "paper"], capsys, "mass_solution")
    assert data["method"] == "PaperAggregatedFamily" and data["positive"]
    data = run_json(["solve", "--family", "seven", "--x", "0.5", "--y", "1.5", "--z", "3"],
                    capsys, "mass_solution")
    assert data["positive"] and data["certified"]


def test_lemma(capsys):
    data = run_json(["lemma", "--name", "lema2", "--samples", "10000", "--seed", "1"],
                    capsys, "lemma_audit")
    assert data["pass"] is True and data["min_margin"] > 0


def test_measure(capsys):
    data = run_json(["measure", "--family", "five", "--bounds", "0.05,1,1,20",
                     "--samples", "500", "--seed", "2"], capsys, "measure")
    assert data["fraction"] > 0


def test_verify(tmp_path, capsys):
    cfg = tmp_path / "ring.json"
    doc = {"bodies": [{"mass": 1.0, "re": 0.7, "im": 0.0},
                      {"mass": 1.0, "re": -0.35, "im": 0.6062177826491071},
                      {"mass": 1.0, "re": -0.35, "im": -0.6062177826491071}]}
    jsonschema.validate(doc, schema("config"))
    cfg.write_text(json.dumps(doc))
    data = run_json(["verify", "--input", str(cfg)], capsys, "verification")
    assert data["drift"]["passed"] is True
    assert data["consistency"] < 1e-8


def test_search_csv(capsys):
    code, out, err = run(["search", "--family", "seven", "--case", "AllOutside",
                          "--fixed", "x=2,z=4", "--scan", "y", "--points", "50",
                          "--range", "3.5,4"], capsys)
    assert code == 0, err
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 50
    assert list(rows[0])[:6] == ["value", "mu", "M", "m", "residual", "positive"]
    assert all(r["positive"] == "false" and r["certified"] == "true" for r in rows)


def test_scan_csv(tmp_path, capsys):
    target = tmp_path / "atlas.csv"
    code, _, err = run(["scan", "--family", "five", "--a-min", "0.1", "--a-max", "5",
                        "--r-min", "0.1", "--r-max", "5", "--grid", "6",
                        "--out", str(target)], capsys)
    assert code == 0, err
    rows = list(csv.DictReader(target.open()))
    assert len(rows) == 36
    assert list(rows[0]) == ["a", "r", "case", "exists", "mu_exact", "m_exact", "residual"]


def test_floats_round_trip(capsys):
    code, out, _ = run(["solve", "--family", "five", "--a", "2", "--r", "3"], capsys)
    text = out.split('"mu": ')[1].split(",")[0]
    assert len(text.lstrip("-").replace(".", "").lstrip("0")) >= 16
    assert repr(float(text)) == repr(json.loads(out)["masses"]["mu"])


@pytest.mark.parametrize("argv", [
    ["scan", "--family", "five", "--a-min", "0.1", "--a-max", "5", "--r-min", "0.1",
     "--r-max", "5", "--grid", "5"],
    ["measure", "--family", "five", "--bounds", "1,5,1,5", "--samples", "300", "--seed", "4"],
    ["lemma", "--name", "lemma5", "--samples", "300", "--seed", "4"],
    ["search", "--family", "seven", "--case", "InnerPairInside_Mid", "--fixed", "x=0.5,z=3",
     "--scan", "y", "--points", "40"],
])
def test_byte_identical_reruns(argv, capsys, monkeypatch):
    first = run(argv, capsys)
    monkeypatch.setenv("NBODY_THREADS", "4")
    second = run(argv, capsys)
    assert first[0] == 0 and first == second


@pytest.mark.parametrize("argv,code,kind", [
    (["classify", "--family", "five", "--positions", "0.5"], 1, "usage"),
    (["classify", "--family", "five", "--positions", "a,b"], 1, "usage"),
    (["frobnicate"], 1, "usage"),
    (["lemma", "--name", "nope"], 2, "refusal"),
    (["solve", "--family", "five", "--a", "0.3", "--r", "0.6"], 2, "refusal"),
    (["classify", "--family", "five", "--positions", "1,2"], 2, "refusal"),
    (["solve", "--family", "five", "--a", "2", "--r", "3", "--mu", "-1", "--method", "paper"],
     2, "refusal"),
    (["verify", "--input", "/nonexistent/config.json"], 1, "usage"),
])
def test_error_exit_codes(argv, code, kind, capsys):
    got, out, err = run(argv, capsys)
    assert got == code and out == ""
    data = json.loads(err)
    jsonschema.validate(data, schema("error"))
    assert data["kind"] == kind and data["exit_code"] == code


def test_numerical_failure_exit_code(tmp_path, capsys):
    cfg = tmp_path / "collide.json"
    cfg.write_text(json.dumps({"bodies": [{"mass": 1, "re": 0.1}, {"mass": 1, "re": 0.1000000000001}]}))
    got, _, err = run(["verify", "--input", str(cfg)], capsys)
    assert got == 3
    assert json.loads(err)["kind"] == "numerical"
