from __future__ import annotations

import json
import subprocess
import sys

import pytest

from folkit.cli import corpus_cases, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants_cusp(capsys):
    code, out, _ = run(capsys, "invariants", "cusp-hamiltonian")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "folkit-report/1"
    (rep,) = doc["result"]
    assert rep["name"] == "cusp-hamiltonian"
    assert rep["nu"] == 1 and rep["dicritical"] is False and rep["milnor"] == 2


def test_invariants_radial_is_dicritical(capsys):
    code, out, _ = run(capsys, "invariants", "radial")
    assert code == 0 and '"dicritical": true' in out


def test_malformed_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.fol"
    bad.write_text('name = "bad"\nvariables = ["x", "y"]\ncomponents = ["x +* y", "y"]\n')
    code, _, err = run(capsys, "invariants", str(bad))
    assert code == 2 and err


def test_invalid_toml_and_missing_file_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.fol"
    bad.write_text("name = \n")
    assert run(capsys, "invariants", str(bad))[0] == 2
    assert run(capsys, "invariants", str(tmp_path / "missing.fol"))[0] == 2


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "invariants", "cusp-hamiltonian", "--order", "0")[0] == 2
    assert run(capsys, "tower", "cusp-hamiltonian", "--format", "dot")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "verify", "--only", "nonsense")[0] == 2


def test_computational_failure_exits_3_and_names_operation(capsys):
    code, _, err = run(capsys, "invariants", "linear-node-irrational", "--ext-bound", "1")
    assert code == 3
    assert "invariants" in err or "linear_part" in err or "spectrum" in err


def test_resolve_reduced_field_single_node_dot(capsys):
    code, out, _ = run(capsys, "resolve", "linear-saddle", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("label=") == 1 and "->" not in out


def test_resolve_json_and_table(capsys):
    code, out, _ = run(capsys, "resolve", "cusp-hamiltonian")
    assert code == 0 and json.loads(out)["result"]
    code, out, _ = run(capsys, "resolve", "cusp-hamiltonian", "--format", "table")
    assert code == 0 and "nondicritical" in out


def test_tower_cusp(capsys):
    code, out, _ = run(capsys, "tower", "cusp-hamiltonian", "--branch", "0")
    assert code == 0
    text = json.dumps(json.loads(out))
    for row in ('"m": 2, "nu": 1, "nu_tilde": 0, "index": 2', '"m": 1, "nu": 2, "nu_tilde": 1, "index": 2'):
        assert row in text
    assert '"endpoint_kind": "nondicritical_endpoint"' in text


def test_separatrices_table(capsys):
    code, out, _ = run(capsys, "separatrices", "tacnode", "--format", "table")
    assert code == 0 and "t^2" in out


def test_verify_single_case_passes(capsys):
    code, out, _ = run(capsys, "verify", "cusp-hamiltonian")
    assert code == 0
    summary = json.loads(out)["result"]["summary"]
    assert summary["passed"] is True and summary["failures"] == 0


def test_verify_only_group(capsys):
    code, out, _ = run(capsys, "verify", "linear-saddle", "--only", "definitions")
    doc = json.loads(out)["result"]
    assert code == 0 and doc["groups"] == ["definitions"]
    code, out, _ = run(capsys, "verify", "linear-saddle", "--only", "definitions", "--format", "table")
    assert code == 0 and "linear-saddle  true" in out


def test_compare_reflexive_and_mismatch(capsys):
    assert run(capsys, "compare", "cusp-hamiltonian")[0] == 0
    code, out, _ = run(capsys, "compare", "cusp-hamiltonian", "linear-saddle", "--pair", "0:0")
    assert code == 1 and '"multiplicities_match": false' in out


def test_environment_override(capsys, monkeypatch):
    monkeypatch.setenv("FOLKIT_FORMAT", "table")
    code, out, _ = run(capsys, "invariants", "cusp-hamiltonian")
    assert code == 0 and not out.lstrip().startswith("{")
    monkeypatch.setenv("FOLKIT_ORDER", "-4")
    assert run(capsys, "invariants", "cusp-hamiltonian")[0] == 2
    monkeypatch.setenv("FOLKIT_ORDER", "8")
    monkeypatch.setenv("FOLKIT_FORMAT", "json")
    # the flag beats the environment
    code, out, _ = run(capsys, "invariants", "cusp-hamiltonian", "--format", "table")
    assert code == 0 and not out.lstrip().startswith("{")


def test_byte_stable_output(capsys):
    first = run(capsys, "tower", "tacnode")[1]
    second = run(capsys, "tower", "tacnode")[1]
    assert first == second


def test_parallel_verify_matches_serial(capsys):
    names = ["cusp-hamiltonian", "linear-saddle", "tacnode", "radial"]
    serial = run(capsys, "verify", *names)
    parallel = run(capsys, "verify", *names, "--jobs", "3")
    assert serial[0] == parallel[0] and serial[1] == parallel[1]


def test_corpus_is_shipped():
    assert len(corpus_cases()) >= 15


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "folkit", "invariants", "linear-saddle"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and '"folkit-report/1"' in proc.stdout


def test_verify_failure_exits_1_with_both_sides(tmp_path, capsys):
    case = tmp_path / "wrong.fol"
    case.write_text(
        'name = "wrong"\nvariables = ["x", "y"]\ncomponents = ["2*y", "3*x^2"]\n\n[expect]\nnu = 5\n'
    )
    code, out, _ = run(capsys, "verify", str(case), "--only", "definitions")
    assert code == 1
    doc = json.loads(out)["result"]
    (rep,) = doc["cases"]
    (fail,) = rep["failures"]
    assert fail["name"] == "expect.nu" and (fail["lhs"], fail["rhs"]) == (1, 5)
