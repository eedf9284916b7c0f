import csv
import json
from pathlib import Path

import numpy as np
import pytest

from kahlercoh import cli

ROOT = Path(__file__).resolve().parents[1]


def _config(tmp_path, scenarios, **extra):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"schema": 1, "model": "P1:m=1", "scenarios": scenarios, **extra}))
    return path


def test_cauchy_first_example(tmp_path):
    cfg = _config(tmp_path, [{"name": "cauchy_first", "count": 20, "seed": 1, "tolerance": 1e-10}])
    assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "out")]) == 0
    report = cli.read_report_json(tmp_path / "out" / "cauchy_first.json")
    assert report.passed and report.cases == 20 and report.max_abs_err < 1e-10
    summary = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert summary["schema"] == 1 and summary["passed"]


@pytest.mark.parametrize("bad", [
    "{not json",
    json.dumps({"schema": 2, "scenarios": [{"name": "curvature", "tolerance": 1e-4}]}),
    json.dumps({"schema": 1, "scenarios": []}),
    json.dumps({"schema": 1, "scenarios": [{"name": "curvature", "tolerance": 0}]}),
    json.dumps({"schema": 1, "scenarios": [{"name": "curvature", "tolerance": -1}]}),
    json.dumps({"schema": 1, "scenarios": [{"name": "curvature"}]}),
    json.dumps({"schema": 1, "scenarios": [{"name": "warp_drive", "tolerance": 1}]}),
    json.dumps({"schema": 1, "model": "P9:m=1", "scenarios": [{"name": "curvature", "tolerance": 1}]}),
    json.dumps({"schema": 1, "scenarios": [{"name": "kernel_law", "tolerance": 1, "count": 0}]}),
    json.dumps({"schema": 1, "scenarios": [{"name": "kernel_law", "tolerance": 1, "quadrature": {"nodes_u": 0}}]}),
    json.dumps({"schema": 1, "output": {"format": "xml"}, "scenarios": [{"name": "curvature", "tolerance": 1}]}),
    json.dumps({"schema": 1, "scenarios": [{"name": "curvature", "tolerance": 1}, {"name": "curvature", "tolerance": 1}]}),
])
def test_invalid_configs_exit_2(tmp_path, bad, capsys):
    path = tmp_path / "bad.json"
    path.write_text(bad)
    assert cli.main(["run", "--config", str(path), "--out", str(tmp_path / "out")]) == 2
    assert "config error" in capsys.readouterr().err
    assert not (tmp_path / "out" / "summary.json").exists()


def test_missing_config_exits_2(tmp_path):
    assert cli.main(["run", "--config", str(tmp_path / "nope.json")]) == 2


def test_failing_scenario_exits_1(tmp_path, capsys):
    cfg = _config(tmp_path, [
        {"name": "plucker_binet_cauchy", "count": 5, "tolerance": 1e-12},
        {"name": "curvature", "powers": [1], "tolerance": 1e-12},
    ])
    assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "out")]) == 1
    err = capsys.readouterr().err
    assert "failing cases for curvature" in err
    summary = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert [s["passed"] for s in summary["scenarios"]] == [True, False]


def test_numerical_error_fails_the_scenario(tmp_path, capsys):
    cfg = _config(tmp_path, [{"name": "overcompleteness", "powers": [1], "tolerance": 1e-6,
                              "quadrature": {"nodes_radial": 1, "nodes_angular": 1, "refine_limit": 1}}])
    assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "out")]) == 1
    assert "AccuracyError" in capsys.readouterr().err


def test_divisor_sweep_csv(tmp_path):
    cfg = _config(tmp_path, [{"name": "divisor_sweep", "model": "P1:m=3", "count": 10, "seed": 5, "tolerance": 1e-8}])
    assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path), "--format", "csv"]) == 0
    rows = cli.read_rows_csv(tmp_path / "divisor_sweep.csv")
    assert len(rows) == 10
    for row in rows:
        w, root = complex(*row["w"]), complex(*row["root"])
        assert root == pytest.approx(-1 / np.conj(w), rel=1e-10)
        assert row["multiplicity"] == 3


def test_csv_and_json_round_trip(tmp_path):
    from kahlercoh import harness

    report = harness.polar_divisors(powers=(2,), count=3, symmetry_probes=4, seed=1)
    (tmp_path / "r.csv").write_text(cli.rows_csv(report.details))
    assert cli.read_rows_csv(tmp_path / "r.csv") == cli._jsonable(report.details)
    (tmp_path / "r.json").write_text(cli.report_json(report))
    assert cli.read_report_json(tmp_path / "r.json").to_dict() == cli._jsonable(report.to_dict())


def test_atomic_write_leaves_no_temp_files(tmp_path):
    cli.write_atomic(tmp_path / "a" / "x.txt", "hello")
    assert [p.name for p in (tmp_path / "a").iterdir()] == ["x.txt"]


def test_psi_table_has_polar_ridge_and_unit_diagonal(tmp_path):
    out = tmp_path / "psi.csv"
    assert cli.main(["table", "--quantity", "psi", "--model", "P1:m=2", "--grid=-2:0:51,-1:1:51",
                     "--x0", "1", "--out", str(out)]) == 0
    with open(out) as fh:
        assert next(csv.reader(fh)) == ["y_re", "y_im", "psi"]
    rows = cli.read_table(out)
    assert len(rows) == 51 * 51
    zero = min(rows, key=lambda r: r["psi"])
    assert (zero["y_re"], zero["y_im"]) == (-1.0, 0.0) and zero["psi"] < 1e-20
    diag = cli.table_rows("psi", cli.BundleModel.p1(2), np.array([0.5 + 0.5j]), 0.5 + 0.5j)
    assert diag[0]["psi"] == pytest.approx(1.0, abs=1e-14)


def test_kernel_table(tmp_path):
    out = tmp_path / "k.csv"
    assert cli.main(["table", "--quantity", "kernel", "--model", "P1:m=1", "--grid", "0:1:3,0:0:1", "--x0", "0",
                     "--out", str(out)]) == 0
    rows = cli.read_table(out)
    assert [r["kernel_re"] for r in rows] == pytest.approx([1 / np.pi] * 3)


def test_decomp_table_constant_modulus(tmp_path):
    out = tmp_path / "d.csv"
    assert cli.main(["table", "--quantity", "decomp", "--model", "P1:m=1", "--points", "0;1;1j",
                     "--rotations", "12", "--out", str(out)]) == 0
    rows = cli.read_table(out)
    assert len(rows) == 12
    mods = [r["modulus"] for r in rows]
    assert max(mods) - min(mods) < 1e-12
    assert all(r["rho"] == pytest.approx(r["modulus"] * np.cos(r["phi"]), abs=1e-12) for r in rows)


def test_mpoint_table_with_infinity(tmp_path):
    out = tmp_path / "m.csv"
    assert cli.main(["table", "--quantity", "mpoint", "--points", "0;inf;1", "--out", str(out)]) == 0
    row = cli.read_table(out)[0]
    assert row["modulus"] == 0.0 and row["phase"] is None


def test_table_usage_errors(tmp_path):
    with pytest.raises(SystemExit) as info:
        cli.main(["table", "--quantity", "entropy", "--out", str(tmp_path / "x.csv")])
    assert info.value.code == 2
    assert cli.main(["table", "--quantity", "psi", "--grid", "1:2", "--out", str(tmp_path / "x.csv")]) == 2
    assert cli.main(["table", "--quantity", "psi", "--out", str(tmp_path / "x.csv")]) == 2
    assert cli.main(["table", "--quantity", "decomp", "--points", "0;1", "--out", str(tmp_path / "x.csv")]) == 2


def test_bundled_config_is_valid():
    config = cli.load_config(ROOT / "configs" / "acceptance.json")
    assert len(config.scenarios) >= 10
