from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import jsonschema
import pytest

from conftest import fixture_path
from exactreg import report as rp
from exactreg.cli import main


@pytest.fixture(scope="module")
def validator():
    schema = rp.load_schema()
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_thue_morse(capsys, validator):
    code, out, _ = run(["analyze", fixture_path("thue_morse"), "--controls", "ab", "aa"], capsys)
    assert code == 0
    doc = json.loads(out)
    validator.validate(doc)
    coh = doc["cohomology"]
    assert coh["k"] == 2 and coh["D"] == 3 and coh["resultant"] == 3
    assert coh["q"]["text"] == "x - 2" and coh["r"]["text"] == "x + 1"
    freqs = {e["patch"]: e["frequency"]["coords"] for e in doc["frequency"]["patches"]}
    assert freqs["ab"] == ["1/3"] and freqs["aa"] == ["1/6"]
    assert doc["regularity"]["controls"] == ["ab", "aa"]


def test_analyze_byte_identical(tmp_path, validator):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["analyze", fixture_path("fib_variant"), "--out", str(a)]) == 0
    assert main(["analyze", fixture_path("fib_variant"), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    validator.validate(json.loads(a.read_text()))


def test_algebraic_roundtrip(tmp_path):
    out = tmp_path / "fib.json"
    assert main(["analyze", fixture_path("fib_variant"), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    lam = rp.parse_algebraic(doc["perron"]["lambda"])
    assert lam * lam == 4 * lam + 1
    for entry in doc["frequency"]["patches"]:
        f = rp.parse_algebraic(entry["frequency"])
        assert rp.algebraic(f) == entry["frequency"]
    fa = rp.parse_algebraic(doc["frequency"]["patches"][0]["frequency"])
    assert abs(float(fa) - 1 / (2 * 5 ** 0.5)) < 1e-15


def test_regularity_command(capsys, validator):
    code, out, _ = run(["regularity", fixture_path("proper"), "--patch", "abb", "--samples", "500",
                        "--word-length", "100000"], capsys)
    assert code == 0
    doc = json.loads(out)
    validator.validate(doc)
    assert doc["supertiles"]["contexts"] == "letters"
    assert doc["supertiles"]["vanishing_from"] <= 2
    assert set(range(2, 7)) <= set(doc["supertiles"]["vanishing_orders"])
    cert = doc["certificate"]
    assert Fraction(cert["error_bound"]) <= Fraction(cert["derived_bound"])


def test_regularity_return_word_mode(capsys, validator):
    code, out, _ = run(["regularity", fixture_path("thue_morse"), "--patch", "aababb", "--controls", "ab", "aa",
                        "--samples", "500", "--word-length", "100000"], capsys)
    assert code == 0
    doc = json.loads(out)
    validator.validate(doc)
    assert doc["coefficients"] == ["1/2", "-1/2"]
    assert doc["supertiles"]["contexts"] == "return-words"


def test_patch_equal_to_control(capsys):
    code, out, _ = run(["regularity", fixture_path("thue_morse"), "--patch", "aa", "--controls", "ab", "aa",
                        "--samples", "200", "--word-length", "50000"], capsys)
    assert code == 0
    assert json.loads(out)["coefficients"] == ["0", "1"]


def test_matrix_mode(tmp_path, capsys, validator):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"matrix": [[1, 1], [2, 0]], "dim": 1,
                                "pairs": [{"q": [-2, 1], "r": [1, 1]}, {"q": [-1, -4, 1], "r": [-1, 1]}]}))
    code, out, _ = run(["matrix", str(path)], capsys)
    assert code == 0
    doc = json.loads(out)
    validator.validate(doc)
    assert doc["lambda"]["coords"] == ["2"]
    assert doc["gamma"] == 1.0
    assert [(p["D"], p["resultant"]) for p in doc["pairs"]] == [(3, 3), (4, -4)]


def test_matrix_right_eigenvector(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"matrix": [[8, 7], [8, 9]]}))
    code, out, _ = run(["matrix", str(path)], capsys)
    doc = json.loads(out)
    assert [v["coords"] for v in doc["right_eigenvector"]] == [["7/15"], ["8/15"]]


def test_matrix_non_primitive_reports(tmp_path, capsys, validator):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"matrix": [[1, 0], [0, 1]]}))
    code, out, _ = run(["matrix", str(path)], capsys)
    assert code == 0
    doc = json.loads(out)
    validator.validate(doc)
    assert doc["primitive"] is False and "lambda" not in doc


def test_convergence_command(tmp_path, capsys, validator):
    csv_path = tmp_path / "table.csv"
    scales = [str(10 ** (1 + i / 3)) for i in range(8)]
    code, out, _ = run(["convergence", fixture_path("nonpisot"), "--patch", "a", "--samples", "200",
                        "--scales", *scales, "--csv", str(csv_path)], capsys)
    assert code == 0
    doc = json.loads(out)
    validator.validate(doc)
    assert len(doc["table"]) == 8
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "V,sup_deviation" and len(lines) == 9


@pytest.mark.parametrize("argv,code", [
    (["convergence", "THUE", "--patch", "a", "--scales", "10", "100"], 2),
    (["analyze", "/nonexistent/file.sub"], 2),
    (["analyze", "THUE", "--controls", "aaa", "bb"], 5),
    (["regularity", "THUE", "--patch", "aaa"], 5),
    (["regularity", "THUE", "--patch", "xyz"], 5),
    (["analyze", "IDENTITY"], 3),
    (["analyze", "EMPTY"], 2),
    (["analyze", "THUE", "--controls", "ab", "ba"], 2),
    (["analyze", "THUE", "--controls", "ab"], 2),
    (["bogus"], 2),
])
def test_exit_codes(argv, code, tmp_path, capsys):
    ident = tmp_path / "ident.sub"
    ident.write_text("a -> a\nb -> b\n")
    empty = tmp_path / "empty.sub"
    empty.write_text("a -> a b\nb ->\n")
    subst = {"THUE": fixture_path("thue_morse"), "IDENTITY": str(ident), "EMPTY": str(empty)}
    argv = [subst.get(a, a) for a in argv]
    assert main(argv) == code
    err = capsys.readouterr().err
    assert err


def test_syntax_error_message_has_position(tmp_path, capsys):
    bad = tmp_path / "bad.sub"
    bad.write_text("a -> a q\nb -> a\n")
    assert main(["analyze", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_matrix_bad_input(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"matrix": [[1, -1], [1, 1]]}))
    assert main(["matrix", str(path)]) == 2
    path.write_text(json.dumps({"matrix": [[1, 1]]}))
    assert main(["matrix", str(path)]) == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "exactreg", "analyze", fixture_path("thue_morse")],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["command"] == "analyze"
