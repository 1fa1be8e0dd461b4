from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import EXIT_CASES, GOLDEN_CASES, GOLDEN_DIR, fractions_st
from gwenergy import cli, jacobi_bvp
from gwenergy.cli import OutputRecord, decode_rational, encode_rational, flatten, main


def run_main(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@given(fractions_st)
def test_rational_round_trip(q):
    s = encode_rational(q)
    assert "/" in s
    assert decode_rational(s) == q


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_json_round_trip(capsys, name):
    code, out, _ = run_main(capsys, GOLDEN_CASES[name] + ["--format", "json"])
    assert code == 0
    record = OutputRecord.from_json(out)
    assert record.to_json() == out
    assert json.loads(record.to_json()) == json.loads(out)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_table_and_json_carry_same_values(capsys, name):
    _, js, _ = run_main(capsys, GOLDEN_CASES[name] + ["--format", "json"])
    _, table, _ = run_main(capsys, GOLDEN_CASES[name] + ["--format", "table"])
    data = json.loads(js)
    table_rows = {}
    for line in table.splitlines():
        if line.startswith("["):
            continue
        key, _, value = line.partition("  ")
        table_rows[key.strip()] = value.strip()
    expected = dict(flatten(data["inputs"], "inputs") + flatten(data["results"], "results"))
    assert table_rows.pop("command") == data["command"]
    assert table_rows == expected
    statuses = [line for line in table.splitlines() if line.startswith("[")]
    assert statuses == [f"[{c['status'].upper()}] {c['name']}" for c in data["checks"]]


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_checks_never_empty(capsys, name):
    _, js, _ = run_main(capsys, GOLDEN_CASES[name] + ["--format", "json"])
    checks = json.loads(js)["checks"]
    assert checks and all(c["status"] == "pass" for c in checks)


def test_energy_values(capsys):
    _, js, _ = run_main(capsys, GOLDEN_CASES["energy_k1"] + ["--format", "json"])
    res = json.loads(js)["results"]
    assert Fraction(res["energy"]) == 1 and Fraction(res["log_coeff"]) == Fraction(-1, 2)
    _, js, _ = run_main(capsys, GOLDEN_CASES["energy_k2"] + ["--format", "json"])
    res = json.loads(js)["results"]
    assert Fraction(res["energy"]) == 6 and Fraction(res["log_coeff"]) == Fraction(3, 8)


def test_jacobi_poly_output(capsys):
    _, js, _ = run_main(capsys, GOLDEN_CASES["jacobi_k1"] + ["--format", "json"])
    res = json.loads(js)["results"]
    assert res["p_k"] == "-1/16*x^2 - 1/4*x*lambda"
    assert res["formal_solution"]["p_k"] == res["p_k"]


def test_sphere_output(capsys):
    _, js, _ = run_main(capsys, GOLDEN_CASES["sphere_k1_m1"] + ["--format", "json"])
    res = json.loads(js)["results"]
    assert [(Fraction(l["eigenvalue"]), l["multiplicity"]) for l in res["lines"]] == [
        (0, 1), (0, 3), (24, 5), (120, 7)
    ]
    assert res["kernel_dimension"] == 4
    _, js, _ = run_main(capsys, GOLDEN_CASES["sphere_k1_m1_j0"] + ["--format", "json"])
    assert len(json.loads(js)["results"]["lines"]) == 1


@pytest.mark.parametrize("name, sign, dim", [("clifford_1_1", "+", 8), ("clifford_3_3", "0", None), ("clifford_2_2", "-", 15)])
def test_clifford_output(capsys, name, sign, dim):
    _, js, _ = run_main(capsys, GOLDEN_CASES[name] + ["--format", "json"])
    res = json.loads(js)["results"]
    assert res["mu_sign"] == sign
    if dim is not None:
        assert res["moduli_dimension"] == dim


@pytest.mark.parametrize("argv, code", EXIT_CASES)
def test_exit_codes_in_process(capsys, argv, code):
    assert run_main(capsys, argv)[0] == code


def test_jacobi_check_failure_reports_diff(capsys, monkeypatch):
    broken = lambda k: jacobi_bvp.BvpSolution(k, (), jacobi_bvp.closed_form_pk(k) * 2)
    monkeypatch.setattr(cli.jacobi_bvp, "formal_solve", broken)
    code, out, err = run_main(capsys, ["jacobi-poly", "--k", "2", "--check"])
    assert code == 1
    assert "[FAIL] formal solution == closed form" in out
    assert "x^3 lambda^0" in err


@pytest.mark.parametrize("argv, code", EXIT_CASES[:3] + EXIT_CASES[-3:])
def test_exit_codes_subprocess(run_cli, argv, code):
    assert run_cli(*argv).returncode == code


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_files(run_cli, update_golden, name):
    proc = run_cli(*GOLDEN_CASES[name], "--format", "json")
    assert proc.returncode == 0, proc.stderr
    path = GOLDEN_DIR / f"{name}.json"
    if update_golden:
        path.write_text(proc.stdout)
    assert proc.stdout == path.read_text()
