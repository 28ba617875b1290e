import json
import subprocess
import sys

import pytest

from arrowkernel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def alg_dir(tmp_path):
    (tmp_path / "broken.alg").write_text("field gf 7\nquiver\n  vertices 1\n  arrow x 1 -> 1\n")
    (tmp_path / "loop-no-rel.alg").write_text("field gf 7\nquiver\n  vertices 1\n  arrow x : 1 -> 1\nrelations\n")
    return tmp_path


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "L2.alg")
    assert code == 0 and "dim = 10" in out and "nilpotency N = 4" in out
    code, out, _ = run(capsys, "basis", "XU.alg", "--format", "json")
    d = json.loads(out)
    assert d["dim"] == 7 and [b["label"] for b in d["basis"]] == ["e1", "a", "b", "c", "a*b", "b*c", "e2"]


def test_basis_errors(capsys, alg_dir):
    code, _, err = run(capsys, "basis", str(alg_dir / "broken.alg"))
    assert code == 2 and "line 4" in err
    code, _, err = run(capsys, "basis", str(alg_dir / "loop-no-rel.alg"), "--degree-bound", "8")
    assert code == 3 and "not finite-dimensional" in err
    code, _, _ = run(capsys, "basis", str(alg_dir / "missing.alg"))
    assert code == 2


def test_removable(capsys):
    code, out, _ = run(capsys, "removable", "L2.alg", "--set", "a2", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["removable"] and d["certificate"]["dim_gamma"] == 6
    code, out, _ = run(capsys, "removable", "XU.alg", "--set", "c", "--format", "json")
    d = json.loads(out)
    assert code == 1 and d["refusal"]["reason"] == "occurrence"
    code, out, _ = run(capsys, "removable", "H4.alg", "--scan", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["greedy_maximal_set"] == ["a"]
    assert {"a", "b"} <= set(d["singleton_removable"])
    code, _, err = run(capsys, "removable", "L2.alg", "--set", "zz")
    assert code == 2 and "unknown arrow 'zz'" in err


def test_remove(capsys):
    code, out, _ = run(capsys, "remove", "C3.alg", "--set", "a")
    assert code == 0 and "arrow b : 2 -> 3" in out and "b*c" in out and "arrow a " not in out
    code, _, _ = run(capsys, "remove", "XU.alg", "--set", "c")
    assert code == 1


def test_ext_table_and_hochschild(capsys):
    code, out, _ = run(capsys, "ext-table", "L1.alg", "--ext-max", "3", "--format", "json")
    d = json.loads(out)
    row = next(r for r in d["ext"] if r["m"] == "S1" and r["n"] == "S2")
    assert code == 0 and row["dims"] == [0, 1, 0, 0]
    code, out, _ = run(capsys, "hochschild", "XU.alg", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["agree"] and d["resolution"] == [3, 4, 5, 6, 7]


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "L2.alg", "--set", "a2", "--format", "json")
    assert code == 0
    assert set(json.loads(out)) == {"meta", "certificate", "ehi", "gorenstein", "singularity", "hochschild", "verdicts"}
    code, _, _ = run(capsys, "verify", "H4.alg", "--set", "a,b")
    assert code == 4
    code, out, _ = run(capsys, "verify", "XU.alg", "--format", "json")
    assert code == 4 and "no removable arrows" in json.loads(out)["note"]
    code, out, _ = run(capsys, "verify", "C3.alg")
    assert code == 0 and "verdicts:" in out


def test_argument_validation(capsys):
    assert main(["basis", "L2.alg", "--ext-max", "0"]) == 2
    assert main(["removable", "L2.alg"]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_verify_json_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "arrowkernel.cli", "verify", "L2.alg", "--set", "a2", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"{")
