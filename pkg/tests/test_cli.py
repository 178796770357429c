import json
import subprocess
import sys

import pytest

from hassett_lattice.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_predicates_14(capsys):
    code, out, _ = _run(capsys, "predicates", "14", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["star"] and rep["assoc_k3"]
    assert rep["bulles"]["witness"] == {"f": "1", "g": "14", "n": "2"}
    assert rep["fano_hilb"]["n"] == "2"
    assert rep["llsvs"]["witness"] == {"n": "1", "a": "1"}


def test_predicates_false_star_exit_1(capsys):
    assert _run(capsys, "predicates", "10")[0] == 1


def test_human_numbers_appear_in_json(capsys):
    _, human, _ = _run(capsys, "predicates", "14")
    _, js, _ = _run(capsys, "predicates", "14", "--json")
    for token in ("14", "2"):
        assert token in human and token in js


def test_certify_verify_roundtrip(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, text, _ = _run(capsys, "certify", "--discriminants", "12,18,24", "--out", str(out))
    assert code == 0 and "verdict: pass" in text
    assert _run(capsys, "verify", str(out))[0] == 0


def test_certify_bytes_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    _run(capsys, "certify", "--discriminants", "12,12,26", "--out", str(a))
    _run(capsys, "certify", "--discriminants", "12,12,26", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_certify_case_mode(capsys):
    code, out, _ = _run(capsys, "certify", "--mode", "case:T4-C5", "--params", "1,1,4,4", "--json")
    assert code == 0 and json.loads(out)["tuple"] == ["8", "8", "26", "26"]


def test_certify_rejects_bad_tuple(capsys):
    code, _, err = _run(capsys, "certify", "--discriminants", "10,14")
    assert code == 2 and "(*)" in err and err.count("\n") == 1


def test_verify_tampered(capsys, tmp_path):
    out = tmp_path / "c.json"
    _run(capsys, "certify", "--discriminants", "12,18,24", "--out", str(out))
    p = json.loads(out.read_text())
    p["gram"][1][1] = "5"
    out.write_text(json.dumps(p))
    code, text, _ = _run(capsys, "verify", str(out))
    assert code == 1 and "gram_mismatch" in text


def test_verify_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert _run(capsys, "verify", str(bad))[0] == 2
    assert _run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


def test_search(capsys):
    code, out, _ = _run(capsys, "search", "--count", "3", "--include", "8,14", "--json")
    assert code == 0 and json.loads(out)["tuple"] == ["8", "14", "24"]
    assert _run(capsys, "search", "--count", "3", "--include", "10")[0] == 2
    code, _, err = _run(capsys, "search", "--count", "4", "--include", "14", "--max-d", "30")
    assert code == 1 and "infeasible" in err


def test_shortvec(capsys, tmp_path):
    code, out, _ = _run(capsys, "shortvec", "--lattice", "A2", "--bound", "2", "--json")
    assert code == 0 and json.loads(out)["pairs_count"] == "3"
    code, out, _ = _run(capsys, "shortvec", "--lattice", "E8", "--bound", "2", "--json")
    assert json.loads(out)["vectors_count"] == "240"
    assert _run(capsys, "shortvec", "--lattice", "U2", "--bound", "2")[0] == 2
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"rank": "2", "gram": [["3", "0"], ["0", "4"]]}))
    code, out, _ = _run(capsys, "shortvec", "--lattice", f"file:{f}", "--bound", "2", "--json")
    assert code == 0 and json.loads(out)["pairs"] == []
    f.write_text(json.dumps({"rank": "3", "gram": [["3", "0"], ["0", "4"]]}))
    assert _run(capsys, "shortvec", "--lattice", f"file:{f}", "--bound", "2")[0] == 2


def test_info(capsys):
    code, out, _ = _run(capsys, "info", "--json")
    info = json.loads(out)
    assert code == 0 and info["rank"] == "25" and info["h2"]["norm"] == "3"


@pytest.mark.parametrize("argv", [["frobnicate"], ["predicates", "14", "--bogus"], ["predicates", "-3"], []])
def test_usage_errors(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2 and err.count("\n") == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hassett_lattice", "predicates", "26", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["fano_hilb"]["n"] == "3"
