import json

import pytest

from partialmetric.cli import dumps, main
from partialmetric.core import space_to_dict
from partialmetric.spaces import CatalogSpec, build_space


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def five_file(tmp_path):
    p = tmp_path / "five.json"
    p.write_text(dumps(space_to_dict(build_space(CatalogSpec("five_metric_negative")))))
    return p


@pytest.fixture
def scheme_file(tmp_path):
    p = tmp_path / "scheme.json"
    p.write_text(json.dumps({"alphabet": "ACGT", "alpha": -1, "beta": 1, "gamma": 2}))
    return p


def test_check_pass_and_fail(capsys, tmp_path, five_file):
    code, out, _ = run(capsys, "check", "--space", str(five_file))
    assert code == 0 and "overall: pass" in out
    doc = json.loads(five_file.read_text())
    for row in doc["values"]:
        if row["tuple"] == ["a", "a", "a", "a", "b"]:
            row["value"] = 10
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check", "--space", str(bad), "--json")
    assert code == 1
    rep = json.loads(out)
    inq = [a for a in rep["axioms"] if a["axiom"] == "(n-inq)"][0]
    assert inq["witness"] == ["a", "a", "a", "b", "a", "b"]


def test_json_output_round_trips(capsys, five_file):
    _, out, _ = run(capsys, "check", "--space", str(five_file), "--json")
    assert dumps(json.loads(out)) + "\n" == out


def test_usage_errors(capsys, tmp_path):
    code, _, err = run(capsys, "check", "--space", str(tmp_path / "missing.json"))
    assert code == 2 and "missing.json" in err
    with pytest.raises(SystemExit) as info:
        main(["check", "--bogus"])
    assert info.value.code == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "metric", "arity": 2, "elements": ["a"], "values": []}')
    code, _, err = run(capsys, "check", "--space", str(bad))
    assert code == 2 and "no value" in err


def test_derive(capsys, tmp_path):
    p = tmp_path / "m.json"
    p.write_text(dumps(space_to_dict(build_space(CatalogSpec("max_partial", (0, 1, 3))))))
    code, out, _ = run(capsys, "derive", "--space", str(p), "--op", "induce")
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "metric"
    assert {tuple(r["tuple"]): r["value"] for r in doc["values"]}[("0", "3")] == 3
    code, out, _ = run(capsys, "derive", "--space", str(p), "--op", "lift", "--n", "3")
    assert json.loads(out)["kind"] == "partial_n_metric"
    code, _, err = run(capsys, "derive", "--space", str(p), "--op", "shift", "--r", "1")
    assert code == 2 and "Metric" in err


def test_align(capsys, scheme_file, tmp_path):
    code, out, _ = run(capsys, "align", "--scheme", str(scheme_file), "CGATC", "CAGA", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["pairs"][0]["score"] == 2
    code, out, _ = run(capsys, "align", "--scheme", str(scheme_file), "A", "C", "G", "--n", "3", "--json")
    assert json.loads(out)["space"]["kind"] == "strong_partial_n_metric"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"alphabet": "ACGT", "alpha": -1, "beta": 5, "gamma": 2}))
    code, out, _ = run(capsys, "align", "--scheme", str(bad), "A", "C")
    assert code == 1 and "warning" in out


def test_topology(capsys, tmp_path):
    p = tmp_path / "a.json"
    p.write_text(dumps(space_to_dict(build_space(CatalogSpec("augmented_real_line", (0,))))))
    code, out, _ = run(capsys, "topology", "--space", str(p), "--json", "--closure", "0")
    doc = json.loads(out)
    assert code == 0 and doc["t0"] and not doc["t1"]
    assert doc["closure"] == ["@a", "0"]


def test_sequence(capsys, tmp_path):
    code, out, _ = run(
        capsys, "sequence", "--closed-form", "augmented_real_line", "--length", "31",
        "--window", "10", "--tol", "1e-6", "--candidate", "0", "--candidate", "@a", "--json",
    )
    doc = json.loads(out)
    assert code == 0
    assert [c["special_limit"] for c in doc["candidates"]] == [True, False]
    sp = tmp_path / "b.json"
    sp.write_text(dumps(space_to_dict(build_space(CatalogSpec("basic_partial")))))
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps(["x", "y"] * 5))
    code, _, _ = run(capsys, "sequence", "--space", str(sp), "--points", str(pts))
    assert code == 1


def test_solve(capsys, tmp_path):
    p = tmp_path / "fp.json"
    p.write_text(json.dumps({"problem": "fixed_point", "space": "max_partial", "f": {"map": "scale", "params": [0.5]}, "x0": 1}))
    code, out, _ = run(capsys, "solve", "--problem", str(p), "--json", "--c", "0.5", "--r", "0")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "fixed_point" and doc["checks"]["contraction"]
    p.write_text(json.dumps({"problem": "fixed_point", "space": "max_partial", "f": "halve_zero_to_minus_one", "x0": 1}))
    code, out, _ = run(capsys, "solve", "--problem", str(p))
    assert code == 1 and "no_certificate" in out
    p.write_text(json.dumps({
        "problem": "coincidence_point", "f": "identity", "g": {"map": "affine", "params": [0.3333333333333333, 0.3333333333333333]},
        "selector": {"map": "affine", "params": [0.3333333333333333, 0.3333333333333333]}, "x0": 0, "c": 0.3333333333333333, "A": 1, "r": 0,
    }))
    code, out, _ = run(capsys, "solve", "--problem", str(p), "--json")
    doc = json.loads(out)
    assert code == 0 and abs(doc["point"] - 0.5) <= 1e-9
    p.write_text(json.dumps({"problem": "nope"}))
    assert run(capsys, "solve", "--problem", str(p))[0] == 2


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--json")
    doc = json.loads(out)
    assert code == 0 and set(doc["spaces"]) >= {"unit_n", "five_metric_negative"}
    code, out, _ = run(capsys, "catalog", "unit_n", "3", "2")
    assert json.loads(out)["arity"] == 3
    assert run(capsys, "catalog", "nope")[0] == 2
