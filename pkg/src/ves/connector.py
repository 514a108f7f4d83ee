"""Construction of the unique B -> D integral curve and its y-parametrization.

The curve leaves the saddle B = (1, 0) along the slope C2(B) > 0 and is
trapped between the zero set of G,

    H_G(U) = U (U - 1)(U - mu) / (U + k2),

and the special parabola H^sp(U): a barrier argument forces it into the
node D.  Numerically the connection is integrated as dH/dU = F/G, which is
regular on the open interior (G > 0 there), seeded at U = 1 + eps with a
second-order series of the separatrix.  The similarity coordinate follows
from dz/dU = Delta/G with z = log(-y); both endpoint values of Delta/G are
removable 0/0 limits, handled by trapezoidal end caps built from the local
expansions.  y_B = -exp(z(1)) comes out finite and below y_D.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .core import GasParams, PhasePoint, f_rhs, g_rhs, delta_fn, point_d
from .errors import DomainError, IntegrationError
from .sonic import expansion_at_b, expansion_at_d
from .special import h_sp, y_d_closed_form

BD_EPS_D_FACTOR = 1e-4      # terminal offset from D, relative to U_D - 1
DEFAULT_SEED_EPS = 1e-6
DEFAULT_RTOL = 1e-11
DEFAULT_ATOL = 1e-13

# least-squares fit window for the fractional term, relative to |y_D|
FIT_WINDOW = (1e-4, 1e-2)
FIT_RESIDUAL_WARN = 0.05


def h_g(U, params):
    """The G = 0 curve H_G(U) = U (U-1)(U-mu) / (U + k2); lower barrier.

    Raises
    ------
    DomainError
        At the pole U = -k2.
    """
    U = np.asarray(U, dtype=float)
    if np.any(U + params.k2 == 0.0):
        raise DomainError(f"H_G has a pole at U = -k2 = {-params.k2}")
    out = U * (U - 1.0) * (U - params.mu) / (U + params.k2)
    return float(out) if out.ndim == 0 else out


def seed_coeffs(params):
    """Series H = c s + q s^2 + O(s^3), s = U - 1, of the separatrix at B.

    c = C2(B) = gamma (1-mu)/(1+k2); q follows from differentiating
    dH/dU = F/G once along the curve at B.
    """
    g, m = params.gamma, params.mu
    c = g * (1.0 - m) / (1.0 + params.k2)
    q = c * (c + (g - 1.0) + m * (2.0 - g)) / ((1.0 - m) * (2.0 * g - 1.0))
    return c, q


@dataclass
class ProfileCurve:
    """A sampled branch of the trajectory, strictly monotone in y.

    For the BD branch the samples come from the adaptive integrator's
    accepted steps; ``_u_of_y``/``_h_of_y`` (set by :func:`parametrize_y`)
    evaluate the curve at arbitrary interior y through the dense output,
    falling back to the endpoint series inside the integration end caps.
    """

    branch: str
    y: Optional[np.ndarray]
    U: np.ndarray
    H: np.ndarray
    y_interval: Optional[Tuple[float, float]]
    params: GasParams
    K: float
    tol: float = 1e-8
    _dense: Optional[Callable] = field(default=None, repr=False)
    _u_bounds: Optional[Tuple[float, float]] = field(default=None, repr=False)
    _z_offset: Optional[float] = field(default=None, repr=False)
    _caps: Optional[dict] = field(default=None, repr=False)
    _seed_eps: float = field(default=DEFAULT_SEED_EPS, repr=False)
    _eps_d: float = field(default=np.nan, repr=False)

    def evaluate(self, y):
        """(U, H) on the parametrized BD curve at interior y."""
        if self._dense is None or self._z_offset is None:
            raise DomainError("curve is not y-parametrized yet")
        y = float(y)
        y_lo, y_hi = self.y_interval
        if not (y_lo <= y <= y_hi):
            raise DomainError(f"y={y} outside BD interval [{y_lo}, {y_hi}]")
        z = np.log(-y)
        z_lo = self._z_of_u(self._u_bounds[1])   # z at the D end (largest U)
        z_hi = self._z_of_u(self._u_bounds[0])   # z at the B end
        if z >= z_hi:
            U, H = self._caps["B"].evaluate(y)
            return float(U), float(H)
        if z <= z_lo:
            U, H = self._caps["D"].evaluate(y)
            return float(U), float(H)
        U = brentq(lambda u: self._z_of_u(u) - z, *self._u_bounds,
                   rtol=4 * np.finfo(float).eps, maxiter=200)
        return float(U), float(self._dense(U)[0])

    def _z_of_u(self, U):
        return self._dense(U)[1] + self._z_offset


def connect_bd(params, seed_eps=DEFAULT_SEED_EPS, tol=1e-6,
               rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """Integrate the separatrix from B to D in the (U, H) plane.

    The state carries (H, z_rel) where z_rel is the similarity log-coordinate
    relative to the seed point; the absolute offset is fixed later by
    :func:`parametrize_y` against the closed form of y_D.

    The barrier H_G(U) < H < H^sp(U) is asserted at every accepted step; the
    terminal H must match the D-side linear series within ``tol``.

    Raises
    ------
    DomainError
        For seed_eps outside (0, 1e-4] or nonpositive tol.
    IntegrationError
        On barrier violation (reported with the offending U), solver
        failure, or terminal mismatch at D.
    """
    if not (0.0 < seed_eps <= 1e-4):
        raise DomainError(f"seed_eps must lie in (0, 1e-4], got {seed_eps}")
    if tol <= 0.0:
        raise DomainError(f"tol must be positive, got {tol}")

    U_D = point_d(params).U
    H_D = point_d(params).H
    c, q = seed_coeffs(params)
    eps_d = BD_EPS_D_FACTOR * (U_D - 1.0)
    U0 = 1.0 + seed_eps
    H0 = c * seed_eps + q * seed_eps * seed_eps

    def rhs(U, state):
        H = state[0]
        g = g_rhs(PhasePoint(U, H), params)
        return [f_rhs(PhasePoint(U, H), params) / g,
                delta_fn(PhasePoint(U, H)) / g]

    sol = solve_ivp(rhs, (U0, U_D - eps_d), [H0, 0.0], method="DOP853",
                    rtol=rtol, atol=atol, dense_output=True)
    if sol.status != 0:
        raise IntegrationError(f"B->D integration failed: {sol.message}")

    Us, Hs = sol.t, sol.y[0]
    interior = (Us > 1.0) & (Us < U_D)
    low = Hs[interior] - h_g(Us[interior], params)
    high = h_sp(Us[interior], params) - Hs[interior]
    bad = np.where((low <= 0.0) | (high <= 0.0))[0]
    if bad.size:
        u_bad = float(Us[interior][bad[0]])
        raise IntegrationError(
            f"barrier H_G < H < H^sp violated at U = {u_bad}", u_offending=u_bad)

    H_series = H_D - _c2_at_d(params) * eps_d
    if abs(Hs[-1] - H_series) > tol:
        raise IntegrationError(
            f"terminal H at U_D - eps deviates from the D series by "
            f"{abs(Hs[-1] - H_series):.3e} > tol={tol}")

    curve = ProfileCurve(branch="BD", y=None, U=Us, H=Hs, y_interval=None,
                         params=params, K=np.nan, tol=tol)
    curve._dense = sol.sol
    curve._u_bounds = (float(Us[0]), float(Us[-1]))
    curve._seed_eps = seed_eps
    curve._eps_d = eps_d
    return curve


def _c2_at_d(params):
    g, m = params.gamma, params.mu
    return (g - 1.0) * (-(g - 3.0) ** 2 * m + g * g - 2.0 * g + 5.0) \
        / (2.0 * (3.0 - g) * ((g - 3.0) * m + 2.0))


def parametrize_y(curve, y_D, params):
    """Anchor the connector curve in y and recover y_B.

    z(U) = log(-y) satisfies dz/dU = Delta/G along the curve, integrated
    jointly with H by :func:`connect_bd`.  Both endpoint values are
    removable singularities with limits 1/(dU/dz); trapezoidal end caps over
    the seed and terminal offsets complete the integral.  Returns the curve
    (with y filled at the accepted steps) and y_B.

    Raises
    ------
    IntegrationError
        If G changes sign on the interior samples (it must stay positive;
        equivalently dU/dz = G/Delta < 0 since Delta < 0 there).
    """
    if y_D >= 0.0 or not np.isfinite(y_D):
        raise DomainError(f"y_D must be finite and negative, got {y_D}")
    K = -y_D / (-y_d_closed_form(params, 1.0))

    Us, Hs = curve.U, curve.H
    g_vals = g_rhs((Us[1:-1], Hs[1:-1]), params)
    if np.any(g_vals <= 0.0):
        u_bad = float(Us[1:-1][np.argmax(g_vals <= 0.0)])
        raise IntegrationError(
            f"G changes sign on the BD interior at U = {u_bad}", u_offending=u_bad)

    exp_d = expansion_at_d("left", y_D, params)

    # limits of dz/dU at the endpoints: 1 / (dU/dz)
    dUdz_B = (1.0 - params.gamma) * (1.0 + params.k2) / params.gamma
    dUdz_D = y_D * exp_d.linear_coeff_U

    z_D = np.log(-y_D)
    psi_seed = delta_fn((Us[0], Hs[0])) / g_rhs((Us[0], Hs[0]), params)
    psi_term = delta_fn((Us[-1], Hs[-1])) / g_rhs((Us[-1], Hs[-1]), params)
    cap_D = 0.5 * (psi_term + 1.0 / dUdz_D) * curve._eps_d
    cap_B = 0.5 * (1.0 / dUdz_B + psi_seed) * curve._seed_eps

    z_rel_term = curve._dense(Us[-1])[1]
    z_offset = z_D - (z_rel_term + cap_D)
    z_B = 0.0 + z_offset - cap_B
    y_B = -np.exp(z_B)
    if not (np.isfinite(y_B) and y_B < y_D < 0.0):
        raise IntegrationError(f"parametrization produced y_B = {y_B}")

    ys = -np.exp(curve._dense(Us)[1] + z_offset)
    new = ProfileCurve(branch="BD", y=ys, U=Us, H=Hs,
                       y_interval=(float(y_B), float(y_D)),
                       params=params, K=K, tol=curve.tol)
    new._dense = curve._dense
    new._u_bounds = curve._u_bounds
    new._z_offset = z_offset
    new._seed_eps = curve._seed_eps
    new._eps_d = curve._eps_d
    new._caps = {
        "B": expansion_at_b(y_B, params),
        "D": exp_d,
    }
    return new, float(y_B)


def fit_beta_coeff(curve, lin):
    """Least-squares coefficient of the |y - y_D|^beta term on the BD side.

    The residual U(y) - U_D - U'(y_D)(y - y_D) is fitted over the window
    FIT_WINDOW * |y_D| with the basis {1, dy, |dy|^beta}; the constant and
    linear nuisance columns absorb endpoint-anchoring error of the
    z-integral.  Returns (U_beta, fit_residual, status) where status is
    'ok' or 'warn' (beta large makes the fractional term subdominant to the
    quadratic tail, inflating the relative residual).
    """
    if curve._z_offset is None:
        raise DomainError("fit_beta_coeff needs a y-parametrized curve")
    beta = lin.beta
    y_B, y_D = curve.y_interval
    U_D = point_d(curve.params).U
    exp_d = expansion_at_d("left", y_D, curve.params)

    w = np.geomspace(FIT_WINDOW[0], FIT_WINDOW[1], 16) * abs(y_D)
    resid = np.empty_like(w)
    for i, dy in enumerate(w):
        U, _ = curve.evaluate(y_D - dy)
        resid[i] = U - U_D - exp_d.linear_coeff_U * (-dy)

    X = np.vstack([np.ones_like(w), w, w**beta]).T
    coef, *_ = np.linalg.lstsq(X, resid, rcond=None)
    U_beta = float(coef[2])
    model = X @ coef
    rel = float(np.max(np.abs(resid - model)) / max(np.max(np.abs(resid)), 1e-300))
    status = "ok" if rel <= FIT_RESIDUAL_WARN else "warn"
    return U_beta, rel, status
