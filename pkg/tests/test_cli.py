from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from altjones.cli import main
from altjones.planar import make_basic_binary

HERE = Path(__file__).parent
NEG = str(HERE / "fixtures" / "negative_crossing.tangle")
P3 = str(HERE / "fixtures" / "p3.json")
TREFOIL = str(HERE / "golden" / "trefoil.tangle")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_jones_prints_p1(capsys):
    code, out, _ = run(capsys, "jones", NEG)
    assert code == 0
    assert out == "(-q^-2) [(0,1) (2,3)]\n+ (q^-1) [(0,3) (2,1)]\n"


def test_jones_json_round_trips(capsys):
    from altjones.skein import SkeinElement
    code, out, _ = run(capsys, "jones", NEG, "--format", "json")
    P = SkeinElement.from_json(json.loads(out))
    assert json.loads(out) == P.to_json()


def test_link(capsys):
    code, out, _ = run(capsys, "jones", TREFOIL)
    assert code == 0
    assert "normalized: q^2 + q^6 - q^8" in out


def test_check_coherent_p3(capsys):
    code, out, _ = run(capsys, "check-coherent", P3)
    assert code == 0
    assert out.splitlines() == ["true", "closures per depth: 1 5 7"]


def test_check_alt_false_has_witness(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"k": 2, "parity": 0, "terms": [
        {"smoothing": {"k": 2, "in_parity": 0, "pairs": [[0, 1], [2, 3]]}, "coeff": {"-2": -1}},
        {"smoothing": {"k": 2, "in_parity": 0, "pairs": [[0, 3], [2, 1]]}, "coeff": {"-2": 1}}]}))
    code, out, _ = run(capsys, "check-alt", str(f))
    assert code == 1
    assert out.startswith("false\nparity mismatch")


def test_check_alt_on_tangle_file(capsys):
    code, out, _ = run(capsys, "check-alt", NEG, "--strict-minmax")
    assert (code, out) == (0, "true\n")


def test_compose(capsys, tmp_path):
    d = tmp_path / "binary.json"
    d.write_text(json.dumps(make_basic_binary(2, 2, 0, 3, 0, 0).to_json()))
    code, out, _ = run(capsys, "compose", str(d), NEG, NEG)
    assert code == 0
    assert out.startswith("tangle k=3\n")
    assert out.count("\nX ") == 2


def test_rotation(capsys, tmp_path):
    d = tmp_path / "u.json"
    from altjones.planar import make_basic_unary
    d.write_text(json.dumps(make_basic_unary(3, 0).to_json()))
    code, out, _ = run(capsys, "rotation", str(d))
    assert code == 0 and out.startswith("R_D = -1/2")
    code, out, _ = run(capsys, "rotation", P3)
    assert out.splitlines()[0].endswith("R = -1")


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "smoothings", "4")
    assert code == 0
    assert out.splitlines()[-1] == "14 smoothings"


def test_verify_is_deterministic(capsys):
    a = run(capsys, "verify", "rotation-additivity", "--cases", "50", "--seed", "7", "--format", "json")
    b = run(capsys, "verify", "rotation-additivity", "--cases", "50", "--seed", "7", "--format", "json")
    assert a == b
    assert a[0] == 0
    assert json.loads(a[1])["passed"] == 50


@pytest.mark.parametrize("argv", [
    ["jones", "/nonexistent.tangle"],
    ["frobnicate"],
    ["verify", "nothing"],
    ["enumerate", "smoothings", "x"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_position(capsys, tmp_path):
    f = tmp_path / "bad.tangle"
    f.write_text("tangle k=2\nX 0 1 2 x\nB 0 1 2 3\n")
    code, _, err = run(capsys, "jones", str(f))
    assert code == 2
    assert "line 2, column 9" in err


def test_cap_from_environment(tmp_path):
    env = {"SKEIN_MAX_CROSSINGS": "2", "PATH": "/usr/bin:/bin"}
    proc = subprocess.run([sys.executable, "-m", "altjones", "jones", TREFOIL],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 2
    assert "cap of 2" in proc.stderr
