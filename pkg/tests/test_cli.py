"""The command-line frontend."""

import json
import subprocess
import sys

import pytest

from qschur import LaurentPoly, cli
from qschur.schur import FormalCoord, SchurElement, a_element, mul_gen_formal, o_element, truncate
from qschur.weyl import SuperMatrix, enumerate_matrices


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("r,count", [(2, 8), (0, 1), (3, 12)])
def test_enumerate_count(capsys, r, count):  # [DERIVED] r=2,3  [TRIVIAL] r=0
    code, out, _ = run(capsys, "enumerate", "--m", "1", "--n", "1", "--r", str(r), "--count")
    assert code == 0 and json.loads(out) == count


def test_enumerate_list(capsys):
    code, out, _ = run(capsys, "enumerate", "--m", "2", "--n", "1", "--r", "2")
    mats = [SuperMatrix.from_json(x) for x in json.loads(out)]
    assert code == 0 and mats == enumerate_matrices(2, 1, 2)


@pytest.mark.parametrize("argv", [
    ["enumerate", "--m", "1", "--n", "1"],
    ["enumerate", "--m", "-1", "--n", "1", "--r", "2"],
    ["enumerate", "--m", "1", "--n", "1", "--r", "x"],
    ["verify", "nonsense", "--m", "1", "--n", "1"],
    ["verify", "key-lemma", "--m", "1", "--n", "1", "--jobs", "0"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "usage error" in err


def test_word(capsys):
    A = SuperMatrix(1, 1, [[1, 1], [1, 1]])
    code, out, _ = run(capsys, "word", json.dumps(A.to_json()))
    rec = json.loads(out)
    assert code == 0 and rec["length"] == 1 and rec["permutation"] == [1, 3, 2, 4]


def test_word_from_file(capsys, tmp_path):
    path = tmp_path / "A.json"
    path.write_text(json.dumps(SuperMatrix.diag(2, 1, (1, 0, 2)).to_json()))
    code, out, _ = run(capsys, "word", str(path))
    assert code == 0 and json.loads(out)["word"] == []


def test_malformed_matrix(capsys):  # [TRIVIAL]
    code, out, err = run(capsys, "word", '{"m": 1, "n": 1, "entries": [[1, "a"]]}')
    assert code == 2 and out == "" and "error" in err
    code, _, err = run(capsys, "word", '{"m": 1,')
    assert code == 2


def _el(x):
    return json.dumps(x.to_json())


@pytest.mark.parametrize("engine", ["structured", "oracle"])
def test_identity_left_factor(capsys, engine):  # [TRIVIAL]
    X = a_element(SuperMatrix.unit(1, 1, 2, 1), (1, 0), 2)
    code, out, _ = run(capsys, "mul", "--left", _el(o_element((0, 0), 2, 1, 1)), "--right", _el(X),
                       "--engine", engine)
    assert code == 0 and SchurElement.from_json(json.loads(out)) == X


def test_generator_product_cross_check(capsys):  # [DERIVED] engine cross-check
    A = SuperMatrix.unit(1, 1, 1, 2)
    E = a_element(A, (0, 0), 2)
    code, out, _ = run(capsys, "mul", "--left", _el(E), "--right", _el(E), "--cross-check")
    rec = json.loads(out)
    assert code == 0 and rec["agree"]
    expect = truncate(mul_gen_formal("E", 1, FormalCoord.basis_element(A, (0, 0))), 2)
    assert SchurElement.from_json(rec["structured"]) == expect


def test_cross_check_mismatch_exit_code(capsys, monkeypatch):
    E = a_element(SuperMatrix.unit(1, 1, 1, 2), (0, 0), 2)
    monkeypatch.setattr(cli, "mul_xi_structured", lambda a, b: SchurElement(1, 1, 2))
    O = o_element((0, 0), 2, 1, 1)
    code, out, err = run(capsys, "mul", "--left", _el(E), "--right", _el(O), "--cross-check")
    assert code == 1 and json.loads(out)["agree"] is False and "DISAGREE" in err


def test_mul_shape_flags(capsys):
    E = a_element(SuperMatrix.unit(1, 1, 1, 2), (0, 0), 2)
    code, _, err = run(capsys, "mul", "--r", "3", "--left", _el(E), "--right", _el(E))
    assert code == 2 and "--r" in err


def test_mul_unsupported_left_factor(capsys):
    X = SuperMatrix(2, 1, [[0, 0, 1], [0, 0, 0], [0, 1, 0]])
    left = SchurElement(2, 1, 2, {X: LaurentPoly.const(1)})
    code, _, _ = run(capsys, "mul", "--left", _el(left), "--right", _el(left))
    assert code == 2


def test_eta(capsys):
    code, out, _ = run(capsys, "eta", "--m", "1", "--n", "1", "E1 F1")
    ef = FormalCoord.from_json(json.loads(out))
    assert code == 0 and ef == mul_gen_formal("E", 1, mul_gen_formal("F", 1, FormalCoord.O(1, 1)))
    comb = {"terms": [{"coeff": {"v": {"0": 1}}, "word": ["K1", "K1^-1"]}]}
    code, out, _ = run(capsys, "eta", "--m", "1", "--n", "1", "--combination", json.dumps(comb))
    assert code == 0 and FormalCoord.from_json(json.loads(out)) == FormalCoord.O(1, 1)
    code, _, _ = run(capsys, "eta", "--m", "1", "--n", "1", "E7")
    assert code == 2


def test_verify_relations(capsys):  # [DERIVED]
    code, out, err = run(capsys, "verify", "qs-relations", "--m", "1", "--n", "1")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1 and rep["passed"] == rep["instances"] > 0
    assert err.startswith("PASS")


def test_verify_key_lemma_count(capsys):  # [DERIVED] sweep bookkeeping
    code, out, _ = run(capsys, "verify", "key-lemma", "--m", "1", "--n", "1", "--r-max", "3")
    rep = json.loads(out)
    expected = sum(len(enumerate_matrices(1, 1, r)) for r in (1, 2, 3)) * (1 + 1 - 1) * 2
    assert code == 0 and rep["instances"] == expected == 48 and not rep["failures"]


def test_verify_triangular(capsys):  # [DERIVED]
    code, out, _ = run(capsys, "verify", "triangular", "--m", "1", "--n", "1", "--r-max", "3")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] == rep["instances"] == 24


def test_report_round_trip_and_determinism(capsys, tmp_path, monkeypatch):
    path = tmp_path / "report.json"
    monkeypatch.setenv("QSS_JOBS", "2")
    argv = ["verify", "divided-powers", "--m", "2", "--n", "1", "--json", str(path)]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    rep = json.loads(path.read_text())
    assert json.loads(json.dumps(rep)) == rep == json.loads(first)
    assert rep["passed"] + len(rep["failures"]) == rep["instances"]


def test_failure_exit_code(capsys, monkeypatch):
    from qschur import suites
    fake = {"schema": 1, "suite": "monomial", "params": {}, "instances": 1, "passed": 0,
            "failures": [{"instance": {}, "pass": False}]}
    monkeypatch.setattr(cli, "run_suite", lambda *a, **k: fake)
    code, _, err = run(capsys, "verify", "monomial", "--m", "1", "--n", "1")
    assert code == 1 and err.startswith("FAIL")
    assert suites.SCHEMA == 1


def test_console_script():
    out = subprocess.run(["qschur", "enumerate", "--m", "1", "--n", "1", "--r", "2", "--count"],
                         capture_output=True, text=True)
    if out.returncode == 127:
        out = subprocess.run([sys.executable, "-m", "qschur.cli", "enumerate", "--m", "1", "--n", "1",
                              "--r", "2", "--count"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "8"
