from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import LIOUVILLE, NOTGH, P2, PA, PB, T1_WORKED, make_op
from vekua.cli import (
    EXIT_INCONCLUSIVE,
    EXIT_NOT_ADMISSIBLE,
    EXIT_OK,
    EXIT_PARSE,
    run,
)
from vekua.coeffs import FourierData, fourier_from_json, fourier_to_json
from vekua.dual import RepIndex, Slot
from vekua.operator import operator_to_json


@pytest.fixture
def write_op(tmp_path):
    def _write(params, name="op.json"):
        path = tmp_path / name
        path.write_text(json.dumps(operator_to_json(make_op(**params))), encoding="utf-8")
        return str(path)

    return _write


def _run_json(argv, capsys):
    code = run(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_classify_both(write_op, capsys):
    code, out = _run_json(["classify", "--op", write_op(NOTGH), "--xi-max", "20"], capsys)
    assert code == EXIT_OK
    answers = {v["property"]: v["answer"] for v in out["verdicts"]}
    assert answers == {"GH": "No", "GS": "Yes"}


def test_classify_inconclusive_exit(write_op, capsys):
    code, out = _run_json(["classify", "--op", write_op(LIOUVILLE), "--property", "GS"], capsys)
    assert code == EXIT_INCONCLUSIVE
    assert out["verdicts"][0]["answer"] == "Inconclusive"


def test_malformed_json_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"group":\n}', encoding="utf-8")
    assert run(["classify", "--op", str(bad)]) == EXIT_PARSE
    err = capsys.readouterr().err
    assert "line 2 column 1" in err


def test_missing_file_and_bad_args(capsys):
    assert run(["classify", "--op", "/nonexistent/op.json"]) == EXIT_PARSE
    assert run(["nosuchcommand"]) == EXIT_PARSE
    assert run(["--help"]) == EXIT_OK


def test_solve_worked_fixture(write_op, tmp_path, capsys):
    op = make_op(**T1_WORKED)
    f = FourierData.from_slots(op.group, 2, {Slot(RepIndex((1,), ()), (), ()): 1})
    rhs = tmp_path / "rhs.json"
    rhs.write_text(json.dumps(fourier_to_json(f)), encoding="utf-8")
    outp = tmp_path / "u.json"
    code = run(["solve", "--op", write_op(T1_WORKED), "--rhs", str(rhs), "--out", str(outp)])
    assert code == EXIT_OK
    obj = json.loads(outp.read_text(encoding="utf-8"))
    assert obj["mode"] == "exact" and obj["residual"] == 0.0
    u = fourier_from_json(obj["u"])
    assert str(u.value(Slot(RepIndex((1,), ()), (), ())).im) == "-4/5"


def test_solve_inadmissible(write_op, tmp_path, capsys):
    op = make_op(**PB)
    f = FourierData.from_slots(op.group, 2, {Slot(RepIndex((), (0,)), (0,), (0,)): 1})
    rhs = tmp_path / "rhs.json"
    rhs.write_text(json.dumps(fourier_to_json(f)), encoding="utf-8")
    code, out = _run_json(["solve", "--op", write_op(PB), "--rhs", str(rhs)], capsys)
    assert code == EXIT_NOT_ADMISSIBLE
    assert "violations" in json.dumps(out)


@pytest.mark.parametrize("cmd", ["solve", "admissible"])
def test_seeded_random_rhs(write_op, capsys, cmd):
    code, _ = _run_json([cmd, "--op", write_op(PA), "--xi-max", "4", "--seed", "3"], capsys)
    assert code == EXIT_OK


@pytest.mark.parametrize(
    "params, kind, code",
    [
        (NOTGH, "kernel", EXIT_OK),
        (PA, "kernel", EXIT_OK),
        (NOTGH, "gh", EXIT_INCONCLUSIVE),
        (LIOUVILLE, "gh", EXIT_OK),
        (LIOUVILLE, "gs", EXIT_OK),
        (P2, "kernel", EXIT_INCONCLUSIVE),
    ],
)
def test_counterexample(write_op, capsys, params, kind, code):
    got, _ = _run_json(
        ["counterexample", "--op", write_op(params), "--kind", kind, "--xi-max", "20"], capsys
    )
    assert got == code


def test_verify_is_deterministic(write_op, capsys):
    path = write_op(NOTGH)
    argv = ["verify", "--op", path, "--xi-max", "4", "--seed", "2"]
    code1, out1 = _run_json(argv, capsys)
    code2, out2 = _run_json(argv, capsys)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    assert out1["apply_vs_bruteforce"]["apply_mismatches"] == 0
    assert out1["apply_vs_bruteforce"]["orbits"] > 0


def test_verify_grid(write_op, capsys):
    params = dict(torus=(1, "1/3√2"), q=[0, 1], p=2)
    code, out = _run_json(
        ["verify", "--op", write_op(params), "--xi-max", "6", "--grid", "128"], capsys
    )
    assert code == EXIT_OK
    assert out["grid"]["max_discrepancy"] < 1e-5


def test_examples_subcommand(capsys):
    assert run(["examples"]) == EXIT_OK
    table = capsys.readouterr().out
    assert "liouville" in table and "NO" not in table.split("\n", 2)[2]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "vekua", "--help"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "classify" in proc.stdout
