import json
import subprocess
import sys

import pytest

from matcanon.cli import matrix_from_json, run
from matcanon.matrix import Matrix
from oracles import F, M

X4 = [[0, 0, 1], [0, 1, 0], [1, 0, 1]]


@pytest.fixture
def mat(tmp_path):
    def write(spec, rows, name="a.mat"):
        path = tmp_path / name
        path.write_text(M(spec, rows).dumps())
        return str(path)
    return write


def call(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_canon_b_equiv(mat, capsys):
    code, out, _ = call(["canon", "--action", "b-equiv", "--in", mat("GF(2)", X4)], capsys)
    assert code == 0
    assert Matrix.loads(out) == Matrix.antidiagonal(F("GF(2)"), 3)


def test_canon_witness_json_roundtrip(mat, capsys):
    x = M("TOWER(3)", [[2, 0], [0, 0]])
    path = mat("TOWER(3)", [[2, 0], [0, 0]])
    code, out, _ = call(["canon", "--action", "b-congr", "--in", path, "--witness", "--json"], capsys)
    assert code == 0
    obj = json.loads(out)
    y, u = matrix_from_json(obj["Y"]), matrix_from_json(obj["u"])
    assert y == Matrix.diagonal(F("TOWER(3)"), [1, 0])
    assert u.T @ x @ u == y
    assert obj["u"]["rows"][0][0].startswith("L1;")


def test_canon_text_witness_sections(mat, capsys):
    code, out, _ = call(["canon", "--action", "u-equiv", "--in", mat("GF(3)", [[1, 2], [1, 1]]),
                         "--witness"], capsys)
    assert code == 0
    sections = [s for s in out.split("# ") if s]
    assert [s.split("\n", 1)[0] for s in sections] == ["Y", "h", "k"]
    y, h, k = (Matrix.loads(s.split("\n", 1)[1]) for s in sections)
    assert h.T @ M("GF(3)", [[1, 2], [1, 1]]) @ k == y


def test_canon_rejects_non_symmetric_congruence(mat, capsys):
    code, _, err = call(["canon", "--action", "u-congr", "--in", mat("GF(3)", [[1, 1], [0, 1]])], capsys)
    assert code == 2 and "symmetric" in err


def test_census_recurrence(capsys):
    assert call(["census", "--recurrence", "alt", "--n", "4"], capsys)[:2] == (0, "10\n")
    assert call(["census", "--recurrence", "sym", "--n", "3"], capsys)[:2] == (0, "14\n")


def test_census_brute(capsys):
    code, out, _ = call(["census", "--brute", "--field", "GF(2)", "--n", "3", "--group", "B",
                         "--relation", "congruence", "--class", "alternating", "--reps", "--json"],
                        capsys)
    obj = json.loads(out)
    assert code == 0 and obj["count"] == 4 and len(obj["representatives"]) == 4
    code, _, err = call(["census", "--brute", "--field", "GF(3)", "--n", "3", "--budget", "10"], capsys)
    assert code == 2 and "budget" in err


def test_equiv_parabolic(mat, capsys):
    a = mat("GF(2)", [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "a.mat")
    b = mat("GF(2)", [[0, 0, 1], [0, 1, 0], [1, 0, 0]], "b.mat")
    assert call(["equiv", "--parabolic", "3", a, b], capsys)[0] == 0
    assert call(["equiv", "--parabolic", "1,1,1", a, b], capsys)[0] == 1
    assert call(["equiv", "--group", "U", a, a], capsys)[0] == 0
    assert call(["equiv", a, b], capsys)[0] == 1


def test_congr_parabolic(mat, capsys):
    c = mat("GF(3)", [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], "c.mat")
    d = mat("GF(3)", [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]], "d.mat")
    assert call(["congr", "--parabolic", "2,2", c, d], capsys)[0] == 1
    assert call(["congr", "--parabolic", "4", c, d, "--kind", "alternating"], capsys)[0] == 0
    assert call(["congr", "--group", "B", c, c], capsys)[0] == 0
    code, _, err = call(["congr", "--parabolic", "2,2", c, d, "--kind", "symmetric"], capsys)
    assert code == 2


def test_invariants(mat, capsys):
    code, out, _ = call(["invariants", "--parabolic", "2,1", "--in",
                         mat("GF(2)", [[0, 0, 1], [0, 1, 0], [1, 0, 0]])], capsys)
    assert code == 0
    assert json.loads(out) == {"block_rank": [[1, 2], [2, 3]], "cross_count": [[1, 1], [1, 0]]}


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["canon", "--action", "b-equiv"], ["canon", "--action", "x", "--in", "f"],
    ["canon", "--action", "b-equiv", "--in", "/nonexistent.mat"],
    ["census"], ["census", "--recurrence", "alt"], ["census", "--brute", "--n", "2"],
    ["invariants", "--parabolic", "2,x", "--in", "f"], ["verify", "--suite", "nope"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = call(argv, capsys)
    assert code == 2 and err.startswith("matcanon: error")


def test_malformed_files_exit_2(tmp_path, capsys):
    bad = {"short.mat": "field GF(2)\nn 2\n1 0\n", "range.mat": "field GF(2)\nn 1\n2\n",
           "field.mat": "field GF(6)\nn 1\n0\n", "junk.mat": "\x00\x01garbage"}
    for name, text in bad.items():
        (tmp_path / name).write_text(text)
        code, _, err = call(["canon", "--action", "b-equiv", "--in", str(tmp_path / name)], capsys)
        assert code == 2, name


def test_mismatched_pair_exit_2(mat, capsys):
    a = mat("GF(2)", [[1]], "a.mat")
    b = mat("GF(3)", [[1]], "b.mat")
    c = mat("GF(2)", [[1, 0], [0, 1]], "c.mat")
    assert call(["equiv", a, b], capsys)[0] == 2
    assert call(["equiv", "--parabolic", "1", a, c], capsys)[0] == 2


def test_verify_census_suite(capsys):
    code, out, _ = call(["verify", "--suite", "census", "--seed", "3"], capsys)
    assert code == 0 and out.startswith("[PASS]")


def test_module_entry_point(mat):
    proc = subprocess.run([sys.executable, "-m", "matcanon", "census", "--recurrence", "sym",
                           "--n", "8"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "7193\n"
