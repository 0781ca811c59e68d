import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

import fusionkit

ROOT = pathlib.Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "fixtures"
SCHEMA = json.loads((ROOT / "docs" / "report_schema.json").read_text())
CLI = os.environ.get("FUSIONKIT_CLI")


def load(rel):
    return json.loads((FIXTURES / rel).read_text())


def test_validate_ring():
    assert fusionkit.validate_ring(load("rings/prop36_i.json"))["valid"]
    broken = fusionkit.validate_ring(load("rings/z3_broken.json"))
    assert not broken["valid"]
    failed = [c for c in broken["checks"] if not c["passed"]]
    assert failed and failed[0]["witness"]


def test_invariants_and_twist():
    r1, r2 = load("rings/prop36_i.json"), load("rings/prop36_ii.json")
    inv = fusionkit.ring_invariants(r1)
    assert inv["global_dimension"] == pytest.approx(36.0)
    assert inv["grading"]["structure"] == "Z3"
    twisted = fusionkit.graded_twist(r1, load("cochains/sl3_chi.json"))
    assert fusionkit.ring_invariants(twisted)["canonical_key"] == fusionkit.ring_invariants(r2)["canonical_key"]


def test_modular_printed36():
    rep = fusionkit.verify_modular(load("modular/printed36.json"))
    assert rep["valid"]
    assert rep["t_order"] == 6
    assert rep["p_plus"][0] == pytest.approx(-6.0)
    assert fusionkit.validate_ring(rep["verlinde"])["valid"]


def test_classify_and_types():
    c = fusionkit.classify(2, 3, "p2q2")
    assert [case["pt_dim"] for case in c["cases"] if case["verdict"] == "survives"] == [2, 3]
    assert [[1, 3], [2, 6], [3, 1]] in [[list(e) for e in t] for t in fusionkit.enumerate_types(36)]
    with pytest.raises(fusionkit.InputError):
        fusionkit.classify(4, 3, "p2q2")


def test_search_and_double():
    res = fusionkit.search(load("search/spec36.json"), workers=2)
    assert res["raw_completions"] == 3 and len(res["rings"]) == 2
    with pytest.raises(fusionkit.CapacityError):
        fusionkit.search(load("search/spec36.json"), node_cap=1)
    assert fusionkit.drinfeld_double(load("groups/s3.json"))["dimensions"] == [1, 1, 2, 2, 2, 2, 3, 3]


COMMANDS = [
    ["check", "rings/prop36_ii.json"],
    ["check", "rings/z3_broken.json"],
    ["modular", "modular/toric_code.json"],
    ["classify", "--p", "3", "--q", "7", "--shape", "pq4"],
    ["search", "--spec", "search/spec36.json"],
    ["double", "--group", "groups/d4.json"],
    ["twist", "--ring", "rings/prop36_i.json", "--cochain", "cochains/sl3_chi.json"],
    ["check", "rings/missing.json"],
]


def fixture_args(cmd):
    return [str(FIXTURES / a) if a.endswith(".json") else a for a in cmd]


@pytest.mark.parametrize("cmd", COMMANDS, ids=lambda c: "-".join(c[:2]))
def test_report_schema_in_process(cmd):
    code, out, _ = fusionkit.run_cli(fixture_args(cmd) + ["--json"])
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert report["exit_code"] == code


@pytest.mark.skipif(CLI is None, reason="FUSIONKIT_CLI not set")
@pytest.mark.parametrize("cmd", COMMANDS, ids=lambda c: "-".join(c[:2]))
def test_report_schema_binary(cmd, tmp_path):
    proc = subprocess.run([CLI, *fixture_args(cmd), "--json", "--out", str(tmp_path)],
                          capture_output=True, text=True, timeout=120)
    report = json.loads(proc.stdout)
    jsonschema.validate(report, SCHEMA)
    assert proc.returncode == report["exit_code"]
    assert json.loads((tmp_path / "report.json").read_text())["checks"] == report["checks"]
