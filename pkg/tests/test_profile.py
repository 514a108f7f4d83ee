import csv
import io

import numpy as np
import pytest

from ves import DomainError, assemble, boundary, eval_physical, initial_data
from ves.core import point_c, point_d
from ves.profile import (REGION_BOUNDARY, REGION_POST_BD, REGION_POST_INTERIOR,
                         REGION_PRE, REGION_SONIC, REGION_VACUUM,
                         export_fields_csv, export_profile_csv,
                         initial_slope_coefficient, sample_profile, summary_dict)


def test_assemble_results(params, sol):
    assert sol.y_D == pytest.approx(-0.513597, abs=1e-6)
    assert sol.y_B < sol.y_D < 0.0
    assert sol.y_B == pytest.approx(-0.99876222, abs=1e-7)


def test_assemble_validation(params):
    with pytest.raises(DomainError):
        assemble(params, K=0.0)
    with pytest.raises(DomainError):
        assemble(params, K=-2.0)


def test_e_matching(params, sol):
    # lim y U from both sides of y = 0 equals -K
    from ves.special import u_of_y
    y = 1e-9
    right = y * u_of_y(y, sol.maps["AE"])
    left = -y * u_of_y(-y, sol.maps["ED"])
    assert abs(right - left) <= 1e-8
    assert right == pytest.approx(-sol.K, abs=1e-8)


def test_d_matching(params, sol):
    from ves.special import u_of_y
    U_ed = u_of_y(sol.y_D * (1 - 1e-12), sol.maps["ED"])
    U_bd, _ = sol.bd_curve.evaluate(sol.y_D)
    assert abs(U_ed - U_bd) <= 1e-8


def test_boundary(sol):
    assert boundary(sol, -0.3) == 0.0
    assert boundary(sol, 0.0) == 0.0
    assert boundary(sol, 1.0) == pytest.approx(sol.y_B, rel=1e-15)
    t = 0.37
    assert boundary(sol, t) == pytest.approx(
        sol.y_B * t ** sol.params.delta, rel=1e-14)


def test_eval_at_singular_point_raises(sol):
    with pytest.raises(DomainError):
        eval_physical(sol, 0.0, 0.0)


def test_eval_pre_singularity_left_raises(sol):
    with pytest.raises(DomainError):
        eval_physical(sol, -1.0, -0.1)


def test_eval_regions(sol):
    d = sol.params.delta
    assert eval_physical(sol, -1.0, 0.5).region == REGION_PRE
    assert eval_physical(sol, -1.0, 0.0).region == REGION_BOUNDARY
    assert eval_physical(sol, 1.0, 0.5).region == REGION_POST_INTERIOR
    assert eval_physical(sol, 1.0, 0.5 * sol.y_D).region == REGION_POST_INTERIOR
    assert eval_physical(sol, 1.0, sol.y_D).region == REGION_SONIC
    mid = 0.5 * (sol.y_B + sol.y_D)
    assert eval_physical(sol, 1.0, mid).region == REGION_POST_BD
    assert eval_physical(sol, 1.0, sol.y_B).region == REGION_BOUNDARY
    assert eval_physical(sol, 1.0, sol.y_B - 0.01).region == REGION_VACUUM
    t = 0.49
    assert eval_physical(sol, t, sol.y_D * t**d).region == REGION_SONIC


def test_eval_vacuum_state_zero(sol):
    s = eval_physical(sol, 1.0, sol.y_B - 0.5)
    assert s.rho == s.u == s.h == s.c == 0.0


def test_eval_at_sonic_value(sol):
    # u = delta * (x/t) * 2/(3-gamma) on the sonic line
    p = sol.params
    for t in (0.3, 1.0):
        x = sol.y_D * t**p.delta
        s = eval_physical(sol, t, x)
        assert s.u == pytest.approx(p.delta * (x / t) * 2.0 / (3.0 - p.gamma),
                                    rel=1e-12)


def test_eval_at_moving_boundary(sol):
    p = sol.params
    t = 0.8
    x = boundary(sol, t)
    s = eval_physical(sol, t, x)
    assert s.rho == 0.0 and s.h == 0.0
    assert s.u == pytest.approx(p.delta * x / t, rel=1e-12)   # U_B = 1


def test_eval_near_e(sol):
    # u(t, x) ~ -K delta t^(delta-1) for |x| << t^delta
    p = sol.params
    t = 0.9
    u0 = eval_physical(sol, t, 0.0).u
    assert u0 == pytest.approx(-sol.K * p.delta * t ** (p.delta - 1), rel=1e-12)
    for x in (-1e-8, 1e-8):
        assert eval_physical(sol, t, x).u == pytest.approx(u0, rel=1e-6)


def test_eval_state_consistency(sol):
    # h = rho^(gamma-1), c = sqrt((gamma-1) h)
    g = sol.params.gamma
    for (t, x) in [(-1.0, 0.7), (1.0, 0.4), (1.0, -0.3), (1.0, -0.7), (0.5, 1.3)]:
        s = eval_physical(sol, t, x)
        assert s.h == pytest.approx(s.rho ** (g - 1.0), rel=1e-12)
        assert s.c == pytest.approx(np.sqrt((g - 1.0) * s.h), rel=1e-12)


def test_eval_self_similar_scaling(sol):
    p = sol.params
    d = p.delta
    for lam in (0.5, 2.0):
        for (t, x) in [(-0.7, 0.9), (0.6, 0.8), (0.6, -0.25)]:
            s1 = eval_physical(sol, t, x)
            s2 = eval_physical(sol, lam * t, lam**d * x)
            assert s2.u == pytest.approx(lam ** (d - 1) * s1.u, rel=1e-10)
            assert s2.h == pytest.approx(lam ** (2 * (d - 1)) * s1.h, rel=1e-10)


def test_eval_pre_signs(sol):
    for x in (0.1, 1.0, 10.0):
        s = eval_physical(sol, -0.5, x)
        assert s.u < 0.0
        assert s.rho > 0.0


def test_u_continuous_across_sonic(sol):
    t = 1.0
    eps = 1e-9
    left = eval_physical(sol, t, sol.y_D - eps).u
    right = eval_physical(sol, t, sol.y_D + eps).u
    here = eval_physical(sol, t, sol.y_D).u
    assert left == pytest.approx(here, abs=1e-7)
    assert right == pytest.approx(here, abs=1e-7)


def test_h_positive_off_boundary(sol):
    t = 0.7
    b = boundary(sol, t)
    assert eval_physical(sol, t, b).h == 0.0
    for off in (1e-6, 1e-3, 0.1):
        assert eval_physical(sol, t, b + off).h > 0.0


def test_t_zero_seam(sol):
    # continuity of u and h across t = 0 at fixed x > 0
    x = 0.5
    s0 = eval_physical(sol, 0.0, x)
    sm = eval_physical(sol, -1e-10, x)
    sp = eval_physical(sol, 1e-10, x)
    assert sm.u == pytest.approx(s0.u, rel=1e-6)
    assert sp.u == pytest.approx(s0.u, rel=1e-6)
    assert sm.h == pytest.approx(s0.h, rel=1e-6)
    assert sp.h == pytest.approx(s0.h, rel=1e-6)


def test_initial_data_origin(sol):
    assert initial_data(sol, 1.0, 0.0) == (0.0, 0.0)


def test_initial_data_slope(sol):
    p = sol.params
    T = 1.0
    h = 1e-7
    u_h = initial_data(sol, T, h)[1]
    assert u_h / h == pytest.approx(-2.0 / ((p.gamma + 1.0) * T), rel=1e-4)


def test_initial_data_second_coefficient(sol):
    p = sol.params
    T = 1.0
    c1 = initial_slope_coefficient(sol, T)
    assert c1 == pytest.approx(0.1291126, abs=1e-6)
    xs = np.geomspace(1e-3, 3e-3, 5)
    lead = -2.0 / ((p.gamma + 1.0) * T)
    est = [(initial_data(sol, T, float(x))[1] - lead * x)
           / x ** (1.0 / (1.0 - p.mu)) for x in xs]
    assert np.mean(est) == pytest.approx(c1, rel=1e-2)


def test_initial_data_validation(sol):
    with pytest.raises(DomainError):
        initial_data(sol, -1.0, 0.5)
    with pytest.raises(DomainError):
        initial_data(sol, 1.0, -0.5)


def test_sample_profile_counts(sol):
    rows = sample_profile(sol, 123)
    assert len(rows) == 123
    tags = {r[3] for r in rows}
    assert tags == {"CA", "AE", "ED", "BD"}


def test_export_profile_csv(sol, tmp_path):
    path = tmp_path / "profile.csv"
    export_profile_csv(sol, path, n_samples=80)
    lines = path.read_text().splitlines()
    assert lines[0] == "y,U,H,branch"
    assert len(lines) == 81
    # 17-digit round trip: re-evaluating the parsed y reproduces U exactly
    from ves.special import u_of_y
    reader = csv.DictReader(io.StringIO("\n".join(lines)))
    for row in list(reader)[:20]:
        if row["branch"] == "CA":
            y, U = float(row["y"]), float(row["U"])
            assert u_of_y(y, sol.maps["CA"]) == pytest.approx(U, rel=1e-14)


def test_export_fields_csv(sol, tmp_path):
    path = tmp_path / "fields.csv"
    export_fields_csv(sol, [0.5, 1.0], [-0.6, 0.0, 0.7], path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,x,rho,u,h,c,region"
    assert len(lines) == 7
    regions = {line.split(",")[-1] for line in lines[1:]}
    assert regions <= {"pre_singularity", "post_interior",
                       "post_between_sonic_and_boundary", "vacuum",
                       "boundary", "sonic"}


def test_summary_dict(sol):
    d = summary_dict(sol)
    assert d["y_B"] < d["y_D"] < 0.0
    assert d["beta"] > 1.0
    assert d["U_beta_status"] in ("ok", "warn")
    assert set(d) >= {"gamma", "mu", "K", "y_D", "y_B", "beta",
                      "U_slope_D_right", "U_slope_D_left", "U_beta"}


def test_k_two_doubles_lengths(sol, sol_k2):
    assert sol_k2.y_D == pytest.approx(2.0 * sol.y_D, rel=1e-14)
    assert sol_k2.y_B == pytest.approx(2.0 * sol.y_B, rel=1e-8)
