import csv
import io
import json
import subprocess
import sys

import pytest

from char2quartics.cli import COMMANDS, CommandConfig, run

JSON_CASES = [
    ["validate", "--model", "Q4-ii a=t b=1 c=0 d=0"],
    ["delta", "--model", "G3-i a0=0 a2=0 a4=t"],
    ["delta", "--variant", "QE-i", "--random", "3", "--seed", "7"],
    ["rr", "--model", "G3-i a0=0 a2=0 a4=t", "--level", "1", "--power", "1", "--closure"],
    ["embed", "--model", "QE-i a0=0 a2=0 a4=t"],
    ["canonical", "--model", "G3-ii a0=0 a2=t c0=0 c1=1 c2=0"],
    ["invariant", "--model", "Q4-ii a=t b=1 c=0 d=0", "--transform", "eps=1 gamma=0 eta=0 tau=1"],
    ["iso", "--model", "Q4-ii a=t b=1 c=0 d=0", "--model2", "Q4-ii a=t+1 b=1 c=1 d=0"],
    ["aut", "--model", "Q4-ii a=t b=1 c=0 d=0"],
    ["bijection", "--direction", "forward", "--values", "t,1,0,0"],
    ["fiber", "--family", "Z", "--point", "1,1,0,0"],
    ["classify", "--family", "V", "--point", "0,1,1", "--m", "2"],
    ["scan", "--family", "Z"],
    ["cover", "--c", "g", "--m", "4"],
    ["resolve", "--family", "Sprime"],
    ["graph", "--family", "Sprime"],
]


def test_delta_example_output():
    code, out, _ = run(["delta", "--model", "G3-i a0=0 a2=0 a4=t", "--base", "F2(t)"])
    assert code == 0
    assert out == "delta_p=3 delta_p1=1 delta_p2=0 branch=inertial"


@pytest.mark.parametrize("argv", JSON_CASES, ids=lambda a: a[0])
def test_json_reports(argv):
    code, out, err = run(argv + ["--format", "json"])
    assert code == 0, err
    doc = json.loads(out)
    assert doc["command"] == argv[0]
    assert all(c["holds"] for c in doc["claims"])


def test_every_command_is_covered():
    assert {a[0] for a in JSON_CASES} == set(COMMANDS)


def test_precondition_exit_code():
    code, out, err = run(["validate", "--model", "Q4-ii a=t^2 b=1 c=0 d=0"])
    assert code == 2
    assert "PreconditionViolated" in err


def test_failed_claim_exit_code():
    # the pencil fiber's singular point has multiplicity 3, so the claim fails
    code, out, _ = run(["fiber", "--family", "S", "--point", "1,g", "--m", "4", "--format", "json"])
    assert code == 1
    doc = json.loads(out)
    assert doc["claims"] == [{"id": "pencil.fiber-double-point", "holds": False}]


def test_bad_config():
    with pytest.raises(ValueError):
        CommandConfig(m=0)


def test_scan_csv():
    code, out, _ = run(["scan", "--family", "Z", "--m", "1", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 16
    assert rows[0]["base_point"] == "a=0 b=0 c=0 d=0"
    assert all(r["mismatch"] == "" for r in rows)


def test_scan_filter():
    code, out, _ = run(["scan", "--family", "Z", "--filter", "b!=0", "--format", "csv"])
    assert len(list(csv.DictReader(io.StringIO(out)))) == 8


def test_output_independent_of_workers():
    base = ["scan", "--family", "V", "--m", "2", "--format", "json"]
    assert run(base)[1] == run(base + ["--workers", "3"])[1]


def test_graph_dot():
    code, out, _ = run(["graph", "--family", "S", "--format", "dot"])
    assert code == 0
    assert out.startswith("graph ") and '"E" -- "E1^(4)";' in out


def test_bijection_round_trip_via_cli():
    _, fwd, _ = run(["bijection", "--direction", "forward", "--values", "t,1,0,0", "--format", "json"])
    vals = list(json.loads(fwd)["result"]["values"].values())
    assert vals == ["1/t", "1/t", "1", "0"]
    code, inv, _ = run(["bijection", "--direction", "inverse", "--values", ",".join(vals),
                        "--format", "json"])
    assert code == 0
    assert list(json.loads(inv)["result"]["values"].values()) == ["t", "1", "0", "0"]


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "char2quartics.cli", "delta", "--model",
                           "QE-i a0=0 a2=0 a4=t"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "delta_p=1" in proc.stdout
