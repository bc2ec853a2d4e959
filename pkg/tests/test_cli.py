import io
import json
import subprocess
import sys

import pytest

from fmlattice.cli import run

S = '{"scalars":[0,-1,1,0]}'
E1 = "elliptic-power:1"


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    text = out.getvalue()
    return code, json.loads(text), text


def test_partners():
    code, res, _ = call("partners", "--N", "12")
    assert code == 0
    assert res["count"] == 4 and res["divisors"] == [1, 3, 4, 12]


def test_check_isometry():
    assert call("check-isometry", "--model", E1, '{"scalars":[1,0,0,1]}')[1] == {"isometric": True}
    assert call("membership", "--model", E1, '{"scalars":[2,0,0,1]}')[1] == {"isometric": False}


def test_cocycle():
    assert call("cocycle", "--model", E1, S, S)[1] == {"lambda": -1, "mu": 0}


def test_to_gamma0():
    code, res, _ = call("to-gamma0", "--level", "5", '{"scalars":[2,1,1,3]}')
    assert code == 0 and (res["a"], res["b"], res["c"], res["d"]) == ("2", "1", "5", "3")


def test_utilde_and_autoeq():
    u = '{"g":%s,"shift":0}' % S
    code, res, _ = call("utilde-mul", "--model", E1, u, u)
    assert code == 0 and res["shift"] == -1 and res["g"]["scalars"] == ["-1", "0", "0", "-1"]
    a = '{"shift":0,"point":["1/2",0,0,0],"g":%s}' % S
    code, res, _ = call("autoeq-mul", "--model", E1, a, a)
    assert code == 0 and res["group_law"] == "split"


def test_slope_and_kernel_slope():
    code, res, _ = call("slope", "--model", E1, "--L", "[[0,3],[-3,0]]", "--l", "2")
    assert code == 0 and (res["r"], res["chi_abs"], res["sigma0"]) == (2, 3, 4)
    code, res, _ = call("slope", "--model", E1, "--L", "[[0,0],[0,0]]")
    assert code == 2 and res["location"] == "DegenerateProjection"
    code, res, _ = call("kernel-slope", "--model", E1, S)
    assert code == 0 and res["l"] == 1


def test_factor():
    code, res, _ = call("factor", "--model", E1, '{"scalars":[1,1,0,1]}')
    assert code == 0 and res["label"] == "S" and res["f1"]["scalars"] == ["-1", "1", "-1", "0"]


@pytest.mark.parametrize("argv,location", [
    (["bogus"], "arguments"),
    (["check-isometry", "--model", E1, "[[1,2]]"], "map"),
    (["check-isometry", "--model", "elliptic-power:x", S], "--model"),
    (["partners", "--N", "0"], None),
    (["to-gamma0", "--level", "5", '{"scalars":[2,0,0,1]}'], None),
    (["slope", "--model", E1, "--L", "[[1,0],[0,1]]"], "--L"),
])
def test_validation_errors_exit_2(argv, location):
    code, res, _ = call(*argv)
    assert code == 2
    assert set(res) == {"error", "location"}
    if location:
        assert res["location"] == location


def test_audit():
    code, res, _ = call("audit", "--seed", "3", "--members", "100", "--non-members", "20", "--slopes", "20")
    assert code == 0 and res["ok"] and res["isometry_criteria"]["disagreements"] == 0


def test_deterministic_bytes():
    argv = ["audit", "--seed", "1", "--members", "50", "--non-members", "10", "--slopes", "10"]
    assert call(*argv)[2] == call(*argv)[2]
    a = '{"shift":2,"point":["1/3","2/3",0,"1/2"],"g":%s}' % S
    assert call("autoeq-mul", "--model", E1, a, a)[2] == call("autoeq-mul", "--model", E1, a, a)[2]


def test_console_entry_point(tmp_path):
    m = tmp_path / "map.json"
    m.write_text(S)
    proc = subprocess.run([sys.executable, "-m", "fmlattice.cli", "check-isometry", "--model", E1, str(m)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"isometric": True}
