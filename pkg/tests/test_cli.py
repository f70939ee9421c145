import csv
import io
import json
import subprocess
import sys

import pytest

from xxdiscord.cli import PHASE_COLUMNS, SWEEP_COLUMNS, format_cell, main, parse_int_list


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sweep_figure_one_grid(capsys):
    code, out, _ = run(["sweep", "--L", "1", "--B-min", "0", "--B-max", "1.2", "--B-steps", "121"], capsys)
    assert code == 0
    header = out.splitlines()[0].split(",")
    assert tuple(header) == SWEEP_COLUMNS
    assert header[:20] == ["B", "T", "L", "N", "I2", "I2_gamma", "I1", "I1_gamma", "Iq", "Iq_gamma",
                           "D", "D_gamma", "C", "ev_pp", "ev_mm", "ev_bell_plus", "ev_bell_minus",
                           "phase_I2", "phase_I1", "dominant"]
    data = rows(out)
    assert len(data) == 121
    assert data[0]["N"] == "inf"
    assert float(data[0]["I2"]) == pytest.approx(0.2847702253, abs=1e-9)
    # full round-trip precision in every numeric cell
    assert all(float(format_cell(float(r["I1"]))) == float(r["I1"]) for r in data)


def test_sweep_is_deterministic_across_threads(tmp_path, capsys):
    args = ["sweep", "--L", "1,3", "--B-max", "1.1", "--B-steps", "6", "--T-min", "0.1",
            "--T-max", "1", "--T-steps", "3", "--T-log"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b), "--threads", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = rows(a.read_text())
    assert [(r["L"], r["T"]) for r in data][:7] == [("1", data[0]["T"])] * 6 + [("1", data[6]["T"])]
    assert len(data) == 2 * 3 * 6


def test_sweep_finite_stepwise(capsys):
    code, out, _ = run(["sweep", "--model", "finite", "--N", "40", "--L", "1-20",
                        "--B-min", "0.997", "--measures", "I2,I1,C"], capsys)
    assert code == 0
    data = rows(out)
    assert len(data) == 20
    assert {r["I2"] for r in data} == {data[0]["I2"]}
    assert float(data[0]["I2"]) == pytest.approx(2.5e-3, abs=1e-12)
    assert data[0]["D"] == "nan"


def test_json_mirrors_csv(capsys):
    args = ["sweep", "--L", "2", "--B-min", "0.2", "--B-max", "0.4", "--B-steps", "3"]
    _, out_csv, _ = run(args, capsys)
    _, out_json, _ = run(args + ["--format", "json"], capsys)
    objs = json.loads(out_json)
    assert isinstance(objs, list) and len(objs) == 3
    assert list(objs[0]) == list(SWEEP_COLUMNS)
    assert all(not isinstance(v, (dict, list)) for o in objs for v in o.values())
    for o, r in zip(objs, rows(out_csv)):
        assert o["I2"] == float(r["I2"])


def test_failed_points_are_flagged(capsys):
    from xxdiscord.finite import critical_fields
    Bk = float(critical_fields(8)[2])
    code, out, err = run(["sweep", "--model", "finite", "--N", "8", "--B-min", repr(Bk)], capsys)
    assert code == 0
    assert rows(out)[0]["status"].startswith("error")
    assert "1 of 1 points failed" in err


@pytest.mark.parametrize("argv", [
    ["sweep", "--B-steps", "0"],
    ["sweep", "--model", "finite", "--N", "8", "--L", "5"],
    ["sweep", "--model", "finite"],
    ["sweep", "--model", "finite", "--N", "7"],
    ["sweep", "--q", "-1"],
    ["sweep", "--measures", "I2,XX"],
    ["sweep", "--L", "0"],
    ["sweep", "--T-log", "--T-min", "0", "--T-max", "1", "--T-steps", "3"],
    ["phase-diagram", "--model", "finite", "--N", "8", "--L", "1,5"],
    ["phase-diagram", "--measures", "I2,I1"],
    ["validate-asymptotics", "--tol", "eta"],
    ["validate-asymptotics", "--checks", "nope"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--format", "xml"])
    assert exc.value.code == 2


def test_phase_diagram(capsys):
    code, out, _ = run(["phase-diagram", "--L", "1,2", "--T-min", "50"], capsys)
    assert code == 0
    assert out.splitlines()[0].split(",") == list(PHASE_COLUMNS)
    data = rows(out)
    assert [r["L"] for r in data] == ["1", "2"]
    assert float(data[0]["B_t"]) == pytest.approx(0.5, rel=0.05)
    assert float(data[1]["B_t"]) == pytest.approx(0.0025, rel=0.1)


def test_phase_diagram_finite(capsys):
    code, out, _ = run(["phase-diagram", "--model", "finite", "--N", "12", "--L", "1-3"], capsys)
    assert code == 0
    assert len(rows(out)) == 3


def test_validate_default_and_tightened(capsys):
    code, out, err = run(["validate-asymptotics", "--checks", "eta,high_T,w_state"], capsys)
    assert code == 0
    assert "checks passed" in err
    code, out, err = run(["validate-asymptotics", "--checks", "bt_sqrtL", "--tol", "bt_sqrtL=1e-6"], capsys)
    assert code == 1
    assert all(r["passed"] == "false" for r in rows(out))


def test_validate_oracle_report(capsys):
    code, out, _ = run(["validate-asymptotics", "--checks", "finite_vs_brute_force"], capsys)
    assert code == 0
    (row,) = rows(out)
    assert float(row["value"]) < 1e-8


def test_int_list_parser():
    assert parse_int_list("1-3,8") == [1, 2, 3, 8]
    assert parse_int_list("5") == [5]


def test_module_entry_point(tmp_path):
    out = tmp_path / "s.csv"
    res = subprocess.run([sys.executable, "-m", "xxdiscord", "sweep", "--measures", "I2",
                          "--out", str(out)], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert out.read_text().startswith("B,T,L,N,")
