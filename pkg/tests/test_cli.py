"""Command line interface: parsing, documents, exit codes."""

import io
import json
import subprocess
import sys

import pytest

from newton_monodromy.cli import main, parse_polynomial_text

INSTANCE = {
    "n": 3,
    "k": 2,
    "mode": "local",
    "polynomials": [
        {"expr": "x^2 + y^2 + z^2"},
        {"support": [[2, 0, 0], [0, 2, 0], [0, 0, 4]]},
    ],
}


def run_cli(argv, stdin_text=""):
    proc = subprocess.run(
        [sys.executable, "-m", "newton_monodromy.cli"] + argv,
        input=stdin_text, capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_parse_simple():
    assert parse_polynomial_text("x^2 + y^2", 2) == [(0, 2), (2, 0)]
    assert parse_polynomial_text("x1*x2^3 - 5*x1^4", 2) == \
        [(1, 3), (4, 0)]
    assert parse_polynomial_text("2*x*y + x^2*y", 2) == [(1, 1), (2, 1)]
    assert parse_polynomial_text("-x + 3", 1) == [(0,), (1,)]


def test_parse_zero_coefficient_dropped():
    assert parse_polynomial_text("0*x^5 + y", 2) == [(0, 1)]


def test_parse_errors():
    with pytest.raises(ValueError, match="negative exponent"):
        parse_polynomial_text("x^-1", 2)
    with pytest.raises(ValueError, match="unknown variable"):
        parse_polynomial_text("x + q", 2)
    with pytest.raises(ValueError, match="unknown variable"):
        parse_polynomial_text("y", 5)
    with pytest.raises(ValueError):
        parse_polynomial_text("", 2)
    with pytest.raises(ValueError):
        parse_polynomial_text("x +", 2)
    with pytest.raises(ValueError):
        parse_polynomial_text("x ^ y", 2)


def test_json_document_round_trip():
    code, out, err = run_cli(["--input", "-", "--spectrum"],
                             json.dumps(INSTANCE))
    assert code == 0, err
    doc = json.loads(out)
    assert doc["input"]["n"] == 3
    assert doc["eigenvalue_candidates"] == ["1/4", "1/2", "3/4"]
    by_ev = {e["eigenvalue"]: e for e in doc["results"]}
    assert by_ev["1/2"]["counts_geq"] == [2, 0]
    assert by_ev["1/2"]["beta"] == [0, -2]
    assert doc["spectrum"] == [["1/2", 1], ["3/2", 1]]
    # re-serializing the parsed document reproduces the bytes
    assert json.dumps(doc, indent=2) + "\n" == out


def test_table_format():
    code, out, err = run_cli(["--input", "-", "--format", "table"],
                             json.dumps(INSTANCE))
    assert code == 0
    assert "instance: n=3 k=2 mode=local" in out
    assert "eigenvalue 1/2" in out


def test_eigenvalue_filter():
    code, out, _ = run_cli(["--input", "-", "--eigenvalue", "1/2",
                            "--eigenvalue", "5/2"], json.dumps(INSTANCE))
    assert code == 0
    doc = json.loads(out)
    assert [e["eigenvalue"] for e in doc["results"]] == ["1/2"]


def test_mode_override(tmp_path):
    inst = dict(INSTANCE)
    inst["polynomials"] = [
        {"support": [[0, 0, 0], [2, 0, 0], [0, 2, 0], [0, 0, 2]]},
        {"support": [[0, 0, 0], [2, 0, 0], [0, 2, 0], [0, 0, 4]]},
    ]
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(inst))
    code, out, err = run_cli(["--input", str(path), "--mode", "infinity"])
    assert code == 0, err
    assert json.loads(out)["input"]["mode"] == "infinity"


def test_validation_exit_code():
    code, _, err = run_cli(["--input", "-"], "not json")
    assert code == 1 and "error:" in err
    bad = dict(INSTANCE, k=5)
    code, _, err = run_cli(["--input", "-"], json.dumps(bad))
    assert code == 1
    code, _, err = run_cli(["--input", "-"], json.dumps(
        {"n": 2, "k": 2, "polynomials": [{"expr": "x^-2"},
                                         {"expr": "y"}]}))
    assert code == 1 and "negative exponent" in err


def test_main_in_process():
    # main() is importable and returns the exit status
    old = sys.stdin, sys.stdout
    sys.stdin = io.StringIO(json.dumps(INSTANCE))
    sys.stdout = io.StringIO()
    try:
        code = main(["--input", "-"])
        out = sys.stdout.getvalue()
    finally:
        sys.stdin, sys.stdout = old
    assert code == 0
    assert json.loads(out)["results"]
