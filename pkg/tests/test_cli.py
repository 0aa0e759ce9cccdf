import json

import pytest

from pretorsion import cli
from pretorsion.abcat import TheoremViolation


def run_json(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip().startswith("{") else None), out.err


def test_enumerate_counts(capsys):
    code, rep, _ = run_json(capsys, "enumerate", "--n", "1")
    assert code == 0 and rep["count"] == 2
    code, rep, _ = run_json(capsys, "enumerate", "--n", "2", "--sweep")
    assert rep["count"] == 5 and rep["comparable_ordered_pairs"] == 13
    assert rep["sweep"] == {"equivalence_holds": True, "ordered_pairs": 25, "pretorsion": 13}
    code, rep, _ = run_json(capsys, "enumerate", "--n", "4", "--method", "combinatorial")
    assert rep["count"] == 42


def test_enumerate_closure_method_reaches_n6(capsys):
    code, rep, _ = run_json(capsys, "enumerate", "--n", "6", "--method", "closure")
    assert code == 0 and rep["count"] == 429


def test_enumerate_sweep_parallel_matches_serial(capsys):
    _, serial, _ = run_json(capsys, "enumerate", "--n", "3", "--sweep")
    _, par, _ = run_json(capsys, "enumerate", "--n", "3", "--sweep", "--jobs", "2")
    serial.pop("timing"), par.pop("timing")
    serial["config"].pop("jobs", None), par["config"].pop("jobs", None)
    assert serial["sweep"] == par["sweep"] and serial["pairs"] == par["pairs"]


def test_check_kA2_serre_classes(capsys):
    code, rep, _ = run_json(capsys, "check", "--n", "2", "--T", "1", "12", "--F", "2", "1")
    assert code == 0 and rep["Z"] == ["[1,1]"]
    assert len(rep["sequences"]) == 3


def test_check_stability_classes(capsys):
    code, rep, _ = run_json(capsys, "check", "--n", "2", "--T", "1", "12", "--F", "12", "2")
    assert code == 0 and rep["Z"] == ["[1,2]"]


def test_check_zero_pair_fails(capsys):
    code, rep, _ = run_json(capsys, "check", "--n", "1", "--T", "--F")
    assert code == 1 and rep["ok"] is False and rep["first_failure"]["X"] == "[1,1]"


def test_check_accepts_interval_syntax(capsys):
    code, rep, _ = run_json(capsys, "check", "--n", "2", "--T", "[1,1]", "1..2", "--F", "[2,2]", "[1,1]")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--n", "2", "--T", "zz"],
        ["enumerate", "--n", "5"],
        ["enumerate", "--n", "7", "--method", "closure"],
        ["enumerate", "--backend", "abgrp", "--order-bound", "5000"],
        ["enumerate", "--backend", "chaincx", "--hi", "12"],
        ["enumerate", "--backend", "abgrp", "--method", "closure"],
        ["repro", "nonexistent"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run_json(capsys, *argv)
    assert code == 2


def test_theorem_violation_prints_bug(capsys, monkeypatch):
    def broken(p=2):
        raise TheoremViolation("sequence is not Z-exact")

    monkeypatch.setattr(cli._repro, "repro_a2", broken)
    code, _, err = run_json(capsys, "repro", "a2")
    assert code == 1 and err.startswith("BUG")


def test_json_and_dot_outputs(tmp_path, capsys):
    out, dot = tmp_path / "r.json", tmp_path / "h.dot"
    assert cli.main(["enumerate", "--n", "2", "--json", str(out), "--dot", str(dot)]) == 0
    assert "pass" in capsys.readouterr().out
    assert json.loads(out.read_text())["count"] == 5
    text = dot.read_text()
    assert text.startswith("digraph") and text.count("->") == 5  # Hasse edges of the pentagon


def test_comparable_serre_and_stable_commands(capsys):
    code, rep, _ = run_json(capsys, "comparable", "--n", "3", "--T1", "1", "12", "123", "--T2", "1")
    assert code == 0 and rep["Z"] == ["[1,2]", "[1,3]"]
    code, rep, _ = run_json(capsys, "serre-extend", "--n", "2", "--U", "1", "12", "--support", "1")
    assert code == 0 and rep["Z"] == ["[1,1]"]
    code, rep, _ = run_json(capsys, "stable", "--n", "2", "--T", "1", "2", "--F", "12", "2")
    assert code == 0 and rep["quotient_T"] == ["[1,1]"] and rep["quotient_F"] == ["[1,2]"]


def test_other_backends(capsys):
    code, rep, _ = run_json(capsys, "enumerate", "--backend", "abgrp", "--order-bound", "12")
    assert code == 0 and rep["count"] == 4
    code, rep, _ = run_json(capsys, "check", "--backend", "abgrp", "--order-bound", "12", "--T", "Z/2", "--F", "Z/3")
    assert code == 1


def test_reports_are_deterministic(capsys):
    _, a, _ = run_json(capsys, "repro", "an-chain", "--n", "3", "--i", "3", "--j", "1")
    _, b, _ = run_json(capsys, "repro", "an-chain", "--n", "3", "--i", "3", "--j", "1")
    a.pop("timing"), b.pop("timing")
    assert a == b and a["version"] and a["config"]["n"] == 3
