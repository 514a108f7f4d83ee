"""Global solution assembly and evaluation of the physical fields.

The trajectory C -> A -> E -> D -> B stitches three closed-form special
branches (CA for t < 0; AE and ED for t > 0) with the numerically
constructed B -> D connector.  Matching is verified at assembly time: both
sides of E share the limit y U -> -K, and the ED and BD branches meet at
(U_D, H_D) on the sonic curve.

Physical fields follow the self-similar ansatz with y = x / |t|^delta:

    t < 0:  u = -delta (-t)^(delta-1) y U(y),
    t > 0:  u =  delta t^(delta-1)  y U(y),
    both:   h = delta^2 |t|^(2(delta-1)) y^2 H(y) / (gamma - 1),

with rho = h^(1/(gamma-1)), c = sqrt((gamma-1) h), and the moving vacuum
boundary b(t) = y_B t^delta for t >= 0 (stationary at 0 before that).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .connector import ProfileCurve, connect_bd, fit_beta_coeff, parametrize_y
from .core import GasParams, point_c, point_d
from .errors import DomainError, IntegrationError
from .sonic import LinearizationAtD, expansion_at_b, expansion_at_d, linearize_at_d
from .special import BRANCH_AE, BRANCH_CA, BRANCH_ED, SpecialSolutionMap, \
    h_sp, u_of_y, y_d_closed_form

REGION_PRE = "pre_singularity"
REGION_POST_INTERIOR = "post_interior"
REGION_POST_BD = "post_between_sonic_and_boundary"
REGION_VACUUM = "vacuum"
REGION_BOUNDARY = "boundary"
REGION_SONIC = "sonic"

BRANCH_ORDER = ("CA", "AE", "ED", "BD")

E_MATCH_TOL = 1e-8
D_MATCH_TOL = 1e-8
_E_PROBE_Y = 1e-9   # |y| at which the E-matching limits are probed


@dataclass(frozen=True)
class PhysicalState:
    """Physical fields at one (t, x); h = rho^(gamma-1), c = sqrt((gamma-1) h)."""

    rho: float
    u: float
    h: float
    c: float
    region: str


@dataclass
class GlobalSolution:
    """The assembled waiting-time solution for one (gamma, mu, K)."""

    params: GasParams
    K: float
    y_D: float
    y_B: float
    maps: dict                      # branch tag -> SpecialSolutionMap
    bd_curve: ProfileCurve
    linearization: LinearizationAtD
    expansions: dict                # 'D_left' | 'D_right' | 'B_right'
    U_beta: float
    U_beta_residual: float
    U_beta_status: str


def assemble(params, K=1.0, seed_eps=1e-6, tol=1e-6, rtol=1e-11, atol=1e-13):
    """Construct all branches and verify the matching conditions.

    Raises
    ------
    IntegrationError
        From the connector, or if the E/D matching conditions fail at the
        stored tolerances (1e-8).
    """
    if K <= 0.0 or not np.isfinite(K):
        raise DomainError(f"K must be positive and finite, got {K}")
    maps = {tag: SpecialSolutionMap(params=params, K=K, branch=tag)
            for tag in (BRANCH_CA, BRANCH_AE, BRANCH_ED)}
    y_D = y_d_closed_form(params, K)

    curve = connect_bd(params, seed_eps=seed_eps, tol=tol, rtol=rtol, atol=atol)
    curve, y_B = parametrize_y(curve, y_D, params)

    # E matching: y U -> -K from both sides of y = 0 (t > 0)
    y_probe = _E_PROBE_Y * K
    yu_right = y_probe * u_of_y(y_probe, maps[BRANCH_AE])
    yu_left = -y_probe * u_of_y(-y_probe, maps[BRANCH_ED])
    if abs(yu_right - yu_left) > E_MATCH_TOL * K:
        raise IntegrationError(
            f"E matching failed: yU limits {yu_right} vs {yu_left}")

    # D matching: ED and BD both anchored at (U_D, H_D)
    U_ed = u_of_y(y_D * (1.0 - 1e-12), maps[BRANCH_ED])
    U_bd, _ = curve.evaluate(y_D)
    if abs(U_ed - U_bd) > D_MATCH_TOL:
        raise IntegrationError(
            f"D matching failed: U from ED {U_ed} vs BD {U_bd}")

    lin = linearize_at_d(params)
    U_beta, resid, status = fit_beta_coeff(curve, lin)
    expansions = {
        "D_left": expansion_at_d("left", y_D, params, U_beta=U_beta),
        "D_right": expansion_at_d("right", y_D, params),
        "B_right": expansion_at_b(y_B, params),
    }
    return GlobalSolution(params=params, K=K, y_D=y_D, y_B=y_B, maps=maps,
                          bd_curve=curve, linearization=lin,
                          expansions=expansions, U_beta=U_beta,
                          U_beta_residual=resid, U_beta_status=status)


def boundary(sol, t):
    """The vacuum boundary b(t): 0 while waiting, y_B t^delta afterwards."""
    t = float(t)
    if t < 0.0:
        return 0.0
    return sol.y_B * t ** sol.params.delta


_SEAM_SNAP = 4.0 * np.finfo(float).eps


def _branch_uh(sol, t, y):
    """(U, H, region) for t > 0 by half-open y-dispatch.

    The measure-zero seams y = y_D and y = y_B are widened to a few ulps so
    that x = y_seam * t^delta recomputed as x / t^delta still lands on them.
    """
    if abs(y - sol.y_D) <= _SEAM_SNAP * abs(sol.y_D):
        D = point_d(sol.params)
        return D.U, D.H, REGION_SONIC
    if abs(y - sol.y_B) <= _SEAM_SNAP * abs(sol.y_B):
        return 1.0, 0.0, REGION_BOUNDARY
    if y > 0.0:
        U = u_of_y(y, sol.maps[BRANCH_AE])
        return U, float(h_sp(U, sol.params)), REGION_POST_INTERIOR
    if y == 0.0:
        # E seam: assigned to the right-limit (AE) side; yU -> -K exactly
        return None, None, REGION_POST_INTERIOR
    if y > sol.y_D:
        U = u_of_y(y, sol.maps[BRANCH_ED])
        return U, float(h_sp(U, sol.params)), REGION_POST_INTERIOR
    if y > sol.y_B:
        U, H = sol.bd_curve.evaluate(y)
        return U, H, REGION_POST_BD
    return None, None, REGION_VACUUM


def eval_physical(sol, t, x):
    """Physical state at (t, x).

    The singular point (0, 0) has no pointwise value (the fields are only
    Holder continuous there) and raises; so does x < 0 before the
    singularity, where the half-line problem is not posed.
    """
    p = sol.params
    t = float(t)
    x = float(x)
    d = p.delta
    if t == 0.0 and x == 0.0:
        raise DomainError("(t, x) = (0, 0) is the singular point; no pointwise value")

    if t < 0.0:
        if x < 0.0:
            raise DomainError(f"x must be >= 0 before the singularity, got {x}")
        if x == 0.0:
            return PhysicalState(0.0, 0.0, 0.0, 0.0, REGION_BOUNDARY)
        y = x / (-t) ** d
        U = u_of_y(y, sol.maps[BRANCH_CA])
        H = float(h_sp(U, p))
        u = -d * (-t) ** (d - 1.0) * y * U
        h = d * d * (-t) ** (2.0 * (d - 1.0)) * y * y * H / (p.gamma - 1.0)
        return _make_state(p, u, h, REGION_PRE)

    if t == 0.0:
        # the t = 0 seam for x > 0, assigned to the right-limit (t -> 0+) side;
        # both one-sided limits coincide (weak-form continuity across t = 0)
        if x < 0.0:
            return PhysicalState(0.0, 0.0, 0.0, 0.0, REGION_VACUUM)
        U_C = point_c(p).U
        u = -d * sol.K**p.mu * U_C ** (1.0 - p.mu) * x ** (1.0 - p.mu)
        h = d * d * (p.gamma - 1.0) / 4.0 * sol.K ** (2.0 * p.mu) \
            * U_C ** (2.0 - 2.0 * p.mu) * x ** (2.0 - 2.0 * p.mu)
        return _make_state(p, u, h, REGION_POST_INTERIOR)

    y = x / t ** d
    U, H, region = _branch_uh(sol, t, y)
    if region == REGION_VACUUM:
        return PhysicalState(0.0, 0.0, 0.0, 0.0, REGION_VACUUM)
    if region == REGION_BOUNDARY:
        u = d * t ** (d - 1.0) * y            # U = 1 at B
        return PhysicalState(0.0, u, 0.0, 0.0, REGION_BOUNDARY)
    if U is None:                             # E seam, y == 0: yU -> -K
        u = -sol.K * d * t ** (d - 1.0)
        h = d * d * t ** (2.0 * (d - 1.0)) \
            * (p.gamma - 1.0) / 4.0 * sol.K * sol.K
        return _make_state(p, u, h, region)
    u = d * t ** (d - 1.0) * y * U
    h = d * d * t ** (2.0 * (d - 1.0)) * y * y * H / (p.gamma - 1.0)
    return _make_state(p, u, h, region)


def _make_state(p, u, h, region):
    h = max(float(h), 0.0)
    rho = h ** (1.0 / (p.gamma - 1.0))
    c = np.sqrt((p.gamma - 1.0) * h)
    return PhysicalState(rho=float(rho), u=float(u), h=h, c=float(c), region=region)


def initial_data(sol, T, x):
    """(rho0, u0) of the initial profile at t = -T.

    Near x = 0 the velocity follows
    u0 = -2x/((gamma+1) T) + c1 x^(1/(1-mu)) + o(...) with

        c1 = U_C^(1/(1-mu)) / (mu K^(mu/(1-mu)) T^((2-mu)/(1-mu))) > 0;

    the second-order coefficient c1 is the free parameter of the continuum
    family (equivalently K).
    """
    if T <= 0.0:
        raise DomainError(f"T must be positive, got {T}")
    if x < 0.0:
        raise DomainError(f"x must be >= 0, got {x}")
    if x == 0.0:
        return 0.0, 0.0
    st = eval_physical(sol, -T, x)
    return st.rho, st.u


def initial_slope_coefficient(sol, T):
    """The coefficient c1 of x^(1/(1-mu)) in the initial velocity profile."""
    p = sol.params
    U_C = point_c(p).U
    return U_C ** (1.0 / (1.0 - p.mu)) / (
        p.mu * sol.K ** (p.mu / (1.0 - p.mu)) * T ** ((2.0 - p.mu) / (1.0 - p.mu)))


# ---------------------------------------------------------------------------
# Sampling and CSV export (17 significant digits: lossless decimal round trip)
# ---------------------------------------------------------------------------

def sample_profile(sol, n_samples=2000):
    """Rows (y, U, H, branch) covering all four branches; n_samples total.

    CA and AE are sampled log-uniformly over y in [1e-3, 1e3] * K; ED and BD
    uniformly over their finite intervals (endpoints trimmed by 1e-9
    relative to stay strictly interior).
    """
    if n_samples < 8:
        raise DomainError("need at least 8 samples (2 per branch)")
    base, extra = divmod(n_samples, 4)
    counts = {tag: base for tag in BRANCH_ORDER}
    counts["BD"] += extra
    rows = []
    K = sol.K
    for tag in ("CA", "AE"):
        ys = np.geomspace(1e-3 * K, 1e3 * K, counts[tag])
        for y in ys:
            U = u_of_y(float(y), sol.maps[tag])
            rows.append((float(y), U, float(h_sp(U, sol.params)), tag))
    trim = 1e-9
    ys = np.linspace(sol.y_D * (1.0 - trim), sol.y_D * 1e-3, counts["ED"])
    for y in ys:
        U = u_of_y(float(y), sol.maps["ED"])
        rows.append((float(y), U, float(h_sp(U, sol.params)), "ED"))
    ys = np.linspace(sol.y_B * (1.0 - trim), sol.y_D * (1.0 + trim), counts["BD"])
    for y in ys:
        U, H = sol.bd_curve.evaluate(float(y))
        rows.append((float(y), U, H, "BD"))
    return rows


def export_profile_csv(sol, path, n_samples=2000):
    """Write the sampled trajectory as CSV with header ``y,U,H,branch``."""
    rows = sample_profile(sol, n_samples)
    with open(path, "w") as f:
        f.write("y,U,H,branch\n")
        for y, U, H, tag in rows:
            f.write(f"{y:.17g},{U:.17g},{H:.17g},{tag}\n")


def export_fields_csv(sol, ts, xs, path):
    """Write physical fields on a (t, x) grid as ``t,x,rho,u,h,c,region``."""
    with open(path, "w") as f:
        f.write("t,x,rho,u,h,c,region\n")
        for t in ts:
            for x in xs:
                s = eval_physical(sol, float(t), float(x))
                f.write(f"{t:.17g},{x:.17g},{s.rho:.17g},{s.u:.17g},"
                        f"{s.h:.17g},{s.c:.17g},{s.region}\n")


def summary_dict(sol):
    """Scalar construction results for the summary JSON export."""
    exp_l = sol.expansions["D_left"]
    exp_r = sol.expansions["D_right"]
    exp_b = sol.expansions["B_right"]
    return {
        "gamma": sol.params.gamma,
        "mu": sol.params.mu,
        "delta": sol.params.delta,
        "K": sol.K,
        "y_D": sol.y_D,
        "y_B": sol.y_B,
        "beta": sol.linearization.beta,
        "lambda1_D": sol.linearization.lambda1,
        "lambda2_D": sol.linearization.lambda2,
        "U_slope_D_right": exp_r.linear_coeff_U,
        "U_slope_D_left": exp_l.linear_coeff_U,
        "H_slope_D_left": exp_l.linear_coeff_H,
        "U_slope_B": exp_b.linear_coeff_U,
        "H_slope_B": exp_b.linear_coeff_H,
        "U_beta": sol.U_beta,
        "U_beta_residual": sol.U_beta_residual,
        "U_beta_status": sol.U_beta_status,
    }
