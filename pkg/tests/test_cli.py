import json
import os

import pytest

from ves.cli import main


def run_cli(args, tmp_path, monkeypatch=None):
    return main(args + ["--out-dir", str(tmp_path)])


def test_critical_points_stdout(tmp_path, capsys):
    code = main(["critical-points", "--gamma", "1.816", "--mu", "0.716"])
    out = capsys.readouterr().out
    assert code == 0
    assert "1.689189" in out and "0.474982" in out     # point D
    assert "beta=4.246617" in out


def test_critical_points_json_schema(tmp_path, capsys):
    jsonschema = pytest.importorskip("jsonschema")
    from importlib.resources import files
    code = main(["critical-points", "--json", "--out-dir", str(tmp_path)])
    assert code == 0
    payload = json.loads((tmp_path / "critical_points.json").read_text())
    schema = json.loads(
        files("ves").joinpath("schemas/critical_points.schema.json").read_text())
    jsonschema.validate(payload, schema)
    labels = [pt["label"] for pt in payload["points"]]
    assert labels == ["A", "B", "C", "D", "E"]


def test_missing_flag_value_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["critical-points", "--gamma", "1.816", "--mu"])
    assert exc.value.code == 2


def test_bad_params_usage_error(capsys):
    assert main(["critical-points", "--gamma", "3.0"]) == 2
    assert main(["critical-points", "--mu", "1.5"]) == 2


def test_solve_outputs(tmp_path, capsys):
    jsonschema = pytest.importorskip("jsonschema")
    from importlib.resources import files
    code = main(["solve", "--samples", "120", "--out-dir", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "profile.csv").read_text().splitlines()
    assert lines[0] == "y,U,H,branch"
    assert len(lines) == 121
    summary = json.loads((tmp_path / "solve_summary.json").read_text())
    schema = json.loads(
        files("ves").joinpath("schemas/solve_summary.schema.json").read_text())
    jsonschema.validate(summary, schema)
    assert summary["y_B"] < summary["y_D"] < 0.0


def test_solve_k_doubles_y_d(tmp_path):
    main(["solve", "--out-dir", str(tmp_path / "k1")])
    main(["solve", "--K", "2", "--out-dir", str(tmp_path / "k2")])
    s1 = json.loads((tmp_path / "k1" / "solve_summary.json").read_text())
    s2 = json.loads((tmp_path / "k2" / "solve_summary.json").read_text())
    assert s2["y_D"] == 2.0 * s1["y_D"]
    assert s2["y_B"] == pytest.approx(2.0 * s1["y_B"], rel=1e-9)


def test_solve_field_export(tmp_path):
    code = main(["solve", "--fields", "0.5:1.0:2,-0.8:0.8:5",
                 "--out-dir", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "fields.csv").read_text().splitlines()
    assert lines[0] == "t,x,rho,u,h,c,region"
    assert len(lines) == 11


def test_verify_single_check(tmp_path, capsys):
    code = main(["verify", "--checks", "holder", "--out-dir", str(tmp_path)])
    assert code == 0
    report = json.loads((tmp_path / "verify_report.json").read_text())
    assert [r["check_name"] for r in report] == ["holder"]
    assert report[0]["status"] == "pass"


def test_verify_check_subset(tmp_path):
    code = main(["verify", "--checks", "holder,sonic_jump",
                 "--out-dir", str(tmp_path)])
    assert code == 0
    report = json.loads((tmp_path / "verify_report.json").read_text())
    assert {r["check_name"] for r in report} == {"holder", "sonic_jump"}


def test_verify_unknown_check(tmp_path):
    assert main(["verify", "--checks", "nope", "--out-dir", str(tmp_path)]) == 2


def test_verify_perturbation_mode(tmp_path, capsys):
    code = main(["verify", "--checks", "weak_form", "--perturb-H", "0.1",
                 "--out-dir", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "expected-fail mode" in out
    report = json.loads((tmp_path / "verify_report.json").read_text())
    names = {r["check_name"]: r for r in report}
    assert names["weak_form"]["status"] == "pass"
    assert names["weak_form_perturbed"]["status"] == "pass"
    assert names["weak_form_perturbed"]["measured"] >= 1e-3


def test_evolve_small_cell_count_usage_error(tmp_path):
    assert main(["evolve", "--n", "63", "--out-dir", str(tmp_path)]) == 2


def test_evolve_waiting_only(tmp_path, capsys):
    jsonschema = pytest.importorskip("jsonschema")
    from importlib.resources import files
    code = main(["evolve", "--n", "128", "--t-end", "-0.5",
                 "--x-lo", "-1", "--x-hi", "3", "--out-dir", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "fv_trajectory.csv").read_text().splitlines()
    assert lines[0] == "t,b_num,b_analytic"
    summary = json.loads((tmp_path / "evolve_summary.json").read_text())
    schema = json.loads(
        files("ves").joinpath("schemas/evolve_summary.schema.json").read_text())
    jsonschema.validate(summary, schema)
    # coarse qualitative bound: the front stays inside the smearing band
    assert summary["max_waiting_drift_cells"] <= 8.0
    assert summary["max_moving_deviation_cells"] == 0.0


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("gamma = 2.0\nmu = 0.5   # a comment\n")
    code = main(["critical-points", "--config", str(cfg)])
    out = capsys.readouterr().out
    assert code == 0
    assert "gamma=2.0" in out
    # flags beat the config file
    code = main(["critical-points", "--config", str(cfg), "--gamma", "1.816"])
    out = capsys.readouterr().out
    assert "gamma=1.816" in out


def test_out_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("VES_OUT_DIR", str(tmp_path))
    code = main(["solve", "--samples", "80"])
    assert code == 0
    assert (tmp_path / "profile.csv").exists()
