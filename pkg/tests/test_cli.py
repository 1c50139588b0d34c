import io
import json
import subprocess
import sys

import pytest

from polydir.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue().strip()


def test_examples():
    assert run("eval", "--dir", "3*2^y+4*0^y", "5") == (0, "96")
    assert run("hom", "--poly", "2y^2", "y+1") == (0, "9")
    assert run("transform", "--poly", "2y^3+y^2+3") == (0, "2*3^y + 2^y + 3*0^y")


def test_algebra_commands():
    assert run("add", "y", "y") == (0, "2y")
    assert run("mul", "2^y", "3^y") == (0, "6^y")
    assert run("compose", "y^2", "y+1") == (0, "y^2 + 2y + 1")
    assert run("tensor", "y+1", "y+1") == (0, "y + 3")
    assert run("ihom", "2y", "y") == (0, "y^2")
    assert run("power", "y", "y") == (0, "y + 1")
    assert run("gamma", "y^3") == (0, "3")
    assert run("transform", "--dir", "3*2^y+4*0^y") == (0, "3y^2 + 4")


def test_enum_and_json():
    code, text = run("enum", "--json", "2y^2", "y+1")
    assert code == 0 and len(json.loads(text)) == 9
    code, text = run("--json", "hom", "1+0^y", "2*2^y")
    assert json.loads(text) == {"value": 8}


def test_bundle_commands():
    code, text = run("to-bundle", "--json", "2y^3+y^2+3")
    assert json.loads(text) == {"total": 8, "base": 6, "proj": [0, 0, 0, 1, 1, 1, 2, 2]}
    assert run("from-bundle", "--dir", text) == (0, "2*3^y + 2^y + 3*0^y")
    assert run("from-bundle", "--poly", "0,0,0,1,1,1,2,2:6") == (0, "2y^3 + y^2 + 3")
    code, text = run("--json", "omega")
    assert json.loads(text)["omega"] == {"total": 3, "base": 2, "proj": [0, 0, 1]}
    code, text = run("--json", "classify", "0:1", "--base", "0")
    assert json.loads(text)["total_map"] == [1]
    code, text = run("--json", "exp", "0,0,1:2", ":1")
    assert json.loads(text)["total"] == 2
    code, text = run("--json", "pullback", "0,0:1", "0,0,0:1")
    assert json.loads(text)["apex"] == 6
    m = {"source": {"total": 1, "base": 1, "proj": [0]},
         "target": {"total": 2, "base": 1, "proj": [0, 0]}, "base_map": [0], "total_map": [1]}
    code, text = run("--json", "factorize", json.dumps(m))
    assert code == 0 and set(json.loads(text)) == {"vertical", "cartesian"}


def test_poly_pullback_command():
    f = {"source": [2], "target": [1], "on_positions": [0], "on_directions": [[0]]}
    code, text = run("--json", "pullback", json.dumps(f), json.dumps(f))
    assert code == 0 and json.loads(text)["apex"] == {"poly": [3]}


def test_errors_exit_2(capsys):
    assert run("eval", "y^2+", "2")[0] == 2
    assert "position 4" in capsys.readouterr().err
    assert run("add", "y", "2^y")[0] == 2
    assert run("tensor", "--dir", "2^y", "3^y")[0] == 2
    assert run("enum", "--budget", "3", "y^3", "y+1")[0] == 2
    assert run("bogus")[0] == 2
    assert run("hom", "y")[0] == 2


def test_check_exit_codes():
    assert run("check", "algebra", "--grid", "exp=2,terms=2")[0] == 0
    code, text = run("check", "topos", "--mutate", "classify")
    assert code == 1 and "counterexample" in text
    code, text = run("--json", "check", "algebra", "--grid", "exp=1,terms=1", "--seed", "3")
    assert json.loads(text)[0]["status"] == "pass"
    assert run("check", "algebra", "--grid", "nonsense=1")[0] == 2


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "polydir", "enum", "2y^2", "y+1"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and len(a.splitlines()) == 9
