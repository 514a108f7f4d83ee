import json

import numpy as np
import pytest

from ves import DomainError
from ves.verifier import (CheckReport, holder_check, holder_spatial_check,
                          ode_oracle_check, pde_residual, physical_vacuum_check,
                          reports_to_json, run_all_checks, simple_wave_check,
                          sonic_jump_check, weak_form_check, _bump, _dbump)


def test_bump_support():
    assert _bump(np.array([1.5]))[0] == 0.0
    assert _bump(np.array([-1.0]))[0] == 0.0
    assert _bump(np.array([0.0]))[0] == 1.0
    assert _dbump(np.array([2.0]))[0] == 0.0
    # derivative consistency
    s = np.linspace(-0.9, 0.9, 7)
    h = 1e-7
    fd = (_bump(s + h) - _bump(s - h)) / (2 * h)
    assert np.allclose(_dbump(s), fd, atol=1e-6)


def test_pde_residual_pre(sol):
    rep = pde_residual(sol, "pre", n=25, refinements=3)
    assert rep.status == "pass"
    assert rep.measured <= 1e-4


def test_pde_residual_post_regions(sol):
    for region in ("post_ae", "post_ed", "post_bd"):
        rep = pde_residual(sol, region, n=25, refinements=3)
        assert rep.status == "pass", rep.details


def test_pde_residual_bad_region(sol):
    with pytest.raises(DomainError):
        pde_residual(sol, "everywhere")


def test_simple_wave_special_branches(sol):
    for branch in ("CA", "AE", "ED"):
        rep = simple_wave_check(sol, branch, n_samples=100)
        assert rep.status == "pass"
        assert rep.measured <= 1e-9


def test_simple_wave_bd(sol):
    rep = simple_wave_check(sol, "BD", n_samples=100)
    assert rep.status == "pass"
    assert rep.measured > 1e-3   # genuinely not a simple wave there


def test_weak_form_unperturbed(sol):
    rep = weak_form_check(sol)
    assert rep.status == "pass"
    assert rep.measured <= 1e-8


def test_weak_form_perturbed_detects(sol):
    rep = weak_form_check(sol, perturbation=0.1)
    assert rep.status == "pass"          # pass means: defect detected
    assert rep.measured >= 1e-3


def test_weak_form_monotone_in_perturbation(sol):
    vals = [weak_form_check(sol, perturbation=p).measured
            for p in (0.01, 0.05, 0.1)]
    assert vals[0] < vals[1] < vals[2]


def test_weak_form_window_validation(sol):
    with pytest.raises(DomainError):
        weak_form_check(sol, x0=0.2, sigma=0.3)


def test_sonic_jump(sol):
    rep = sonic_jump_check(sol)
    assert rep.status == "pass"
    assert rep.measured <= 1e-3
    assert "left=2.69" in rep.details and "right=3.96" in rep.details


def test_sonic_jump_requires_positive_t(sol):
    with pytest.raises(DomainError):
        sonic_jump_check(sol, t=-1.0)


def test_physical_vacuum(sol):
    for t in (0.1, 0.5, 1.0):
        rep = physical_vacuum_check(sol, t)
        assert rep.status == "pass", rep.details
        assert rep.measured > 0.0
        assert abs(rep.measured - rep.expected) <= rep.tolerance


def test_physical_vacuum_time_scaling(sol):
    # h_x(t, b(t)+) scales like t^(delta-2)
    d = sol.params.delta
    ts = np.array([0.1, 0.5, 1.0])
    hx = np.array([physical_vacuum_check(sol, float(t)).measured for t in ts])
    slope = np.polyfit(np.log(ts), np.log(hx), 1)[0]
    assert slope == pytest.approx(d - 2.0, rel=0.02)


def test_holder(sol):
    rep = holder_check(sol)
    assert rep.status == "pass"
    assert rep.measured == pytest.approx(sol.params.delta - 1.0, rel=1e-6)


def test_holder_prefactor_scales_with_k(sol, sol_k2):
    r1 = holder_check(sol)
    r2 = holder_check(sol_k2)
    # exponent unchanged, prefactor doubled (read from details)
    assert r1.measured == pytest.approx(r2.measured, rel=1e-9)
    pre1 = float(r1.details.split("prefactor ")[1].split(" ")[0])
    pre2 = float(r2.details.split("prefactor ")[1].split(" ")[0])
    assert pre2 == pytest.approx(2.0 * pre1, rel=1e-6)


def test_holder_spatial(sol):
    rep = holder_spatial_check(sol)
    assert rep.status == "pass"
    assert rep.measured == pytest.approx(1.0 - sol.params.mu, rel=0.02)


def test_ode_oracle_branches(sol):
    assert ode_oracle_check(sol, "CA", 0.5, 5.0).status == "pass"
    assert ode_oracle_check(sol, "AE", 0.5, 5.0).status == "pass"
    assert ode_oracle_check(sol, "ED", sol.y_D * 0.9, sol.y_D * 0.05).status == "pass"
    span = sol.y_D - sol.y_B
    rep = ode_oracle_check(sol, "BD", sol.y_D - 0.1 * span, sol.y_B + 0.1 * span)
    assert rep.status == "pass"
    assert rep.measured <= 1e-7


def test_ode_oracle_zero_length(sol):
    rep = ode_oracle_check(sol, "CA", 1.0, 1.0)
    assert rep.measured == 0.0
    assert rep.status == "pass"


def test_ode_oracle_near_critical_rejected(sol):
    with pytest.raises(DomainError):
        ode_oracle_check(sol, "ED", sol.y_D * (1 - 1e-9), sol.y_D * 0.5)


def test_reports_bitstable(sol):
    r1 = sonic_jump_check(sol)
    r2 = sonic_jump_check(sol)
    assert r1 == r2


def test_reports_json_schema(sol, tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    from importlib.resources import files
    reports = [holder_check(sol), sonic_jump_check(sol)]
    path = tmp_path / "report.json"
    reports_to_json(reports, path)
    payload = json.loads(path.read_text())
    schema = json.loads(
        files("ves").joinpath("schemas/verify_report.schema.json").read_text())
    jsonschema.validate(payload, schema)
    assert [p["check_name"] for p in payload] == ["holder", "sonic_jump"]


def test_run_all_checks_subset(sol):
    reports = run_all_checks(sol, checks=["holder"])
    assert [r.check_name for r in reports] == ["holder"]
    with pytest.raises(DomainError):
        run_all_checks(sol, checks=["nonsense"])
