"""Closed-form special solution and its y <-> U maps on the branches C-A-E-D.

The parabola H = ((gamma-1)^2/4) U^2 solves dH/dU = F/G identically; it is
the phase-plane shadow of the simple wave u = -2c/(gamma-1).  Restricted to
it, the y-ODE collapses to the self-similar Burgers equation

    y U'(y) = -[(gamma+1) U - 2 mu] U / ((gamma+1) U - 2),

which integrates to an explicit y(U) on each monotone branch:

    CA:  y =  K (U_C - U)^(1/mu - 1) / U^(1/mu),        0 < U < U_C, y > 0
    AE:  y =  K (U_C - U)^(1/mu - 1) / (-U)^(1/mu),     U < 0,       y > 0
    ED:  y = -K (U - U_C)^(1/mu - 1) / U^(1/mu),        U > U_D,  y_D < y < 0

K > 0 is the integral constant; the whole family scales linearly in K.
Inversion U(y) is a bracketed root solve on the strictly monotone
log-transformed map.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import GasParams, point_c, point_d
from .errors import ComputationError, DomainError

BRANCH_CA = "CA"
BRANCH_AE = "AE"
BRANCH_ED = "ED"
BRANCH_BD = "BD"   # owned by the connector module, listed for completeness

SPECIAL_BRANCHES = (BRANCH_CA, BRANCH_AE, BRANCH_ED)

# relative guard band in U at branch endpoints; fractional powers such as
# (U_C - U)^(1/mu - 1) have infinite derivative at the endpoint for mu > 1/2
ENDPOINT_GUARD = 1e-12


@dataclass(frozen=True)
class SpecialSolutionMap:
    """One branch of the special solution for fixed parameters and K."""

    params: GasParams
    K: float
    branch: str

    def __post_init__(self):
        if not (self.K > 0.0) or not np.isfinite(self.K):
            raise DomainError(f"K must be positive and finite, got {self.K}")
        if self.branch not in SPECIAL_BRANCHES:
            raise DomainError(
                f"branch must be one of {SPECIAL_BRANCHES}, got {self.branch!r}")


def h_sp(U, params):
    """The special solution H = ((gamma-1)^2 / 4) U^2."""
    return (params.gamma - 1.0) ** 2 / 4.0 * np.asarray(U) ** 2


def y_d_closed_form(params, K=1.0):
    """Similarity coordinate of the sonic point D on the ED branch.

    y_D = -K (U_D - U_C)^(1/mu - 1) / U_D^(1/mu) < 0; linear in K.
    """
    U_C = point_c(params).U
    U_D = point_d(params).U
    im = 1.0 / params.mu
    return -K * (U_D - U_C) ** (im - 1.0) / U_D ** im


def _log_y(U, m):
    """log|y| as a function of U on the branch of ``m``; strictly monotone."""
    p = m.params
    im = 1.0 / p.mu
    U_C = point_c(p).U
    if m.branch == BRANCH_CA:
        return np.log(m.K) + (im - 1.0) * np.log(U_C - U) - im * np.log(U)
    if m.branch == BRANCH_AE:
        return np.log(m.K) + (im - 1.0) * np.log(U_C - U) - im * np.log(-U)
    # ED
    return np.log(m.K) + (im - 1.0) * np.log(U - U_C) - im * np.log(U)


def _check_u_in_branch(U, m):
    p = m.params
    U_C = point_c(p).U
    if m.branch == BRANCH_CA:
        if not (0.0 < U < U_C):
            raise DomainError(f"CA branch needs 0 < U < U_C={U_C:.6g}, got {U}")
    elif m.branch == BRANCH_AE:
        if not (U < 0.0):
            raise DomainError(f"AE branch needs U < 0, got {U}")
    else:
        U_D = point_d(p).U
        if not (U > U_D):
            raise DomainError(f"ED branch needs U > U_D={U_D:.6g}, got {U}")


def y_of_u(U, m):
    """Similarity coordinate y of a point U strictly inside the branch range."""
    U = float(U)
    _check_u_in_branch(U, m)
    sign = -1.0 if m.branch == BRANCH_ED else 1.0
    return sign * np.exp(_log_y(U, m))


def _log_sigmoid(x):
    """log(1 / (1 + exp(-x))), stable for large |x|."""
    if x >= 0.0:
        return -np.log1p(np.exp(-x))
    return x - np.log1p(np.exp(x))


# the logistic chart saturates in double precision beyond |theta| ~ 700
_CHART_RANGE = 700.0


def _chart_log_y(theta, m):
    """log|y| as a function of the branch's well-conditioned chart variable.

    The y <-> U maps have infinite dU-derivatives at fractional-power
    endpoints, so the inversion solves in a chart where d log|y| / d theta
    is bounded away from 0 and infinity over the whole branch:

      CA: U = U_C * sigmoid(theta)      (resolves both U -> 0 and U -> U_C)
      AE: -U = exp(theta)
      ED: U - U_C = (U_D - U_C) * exp(theta), theta >= 0
    """
    p = m.params
    im = 1.0 / p.mu
    U_C = point_c(p).U
    logK = np.log(m.K)
    if m.branch == BRANCH_CA:
        log_uc_minus_u = np.log(U_C) + _log_sigmoid(-theta)
        log_u = np.log(U_C) + _log_sigmoid(theta)
        return logK + (im - 1.0) * log_uc_minus_u - im * log_u
    if m.branch == BRANCH_AE:
        # W = -U = e^theta
        return logK + (im - 1.0) * np.log(U_C + np.exp(theta)) - im * theta
    # ED: V = U - U_C = (U_D - U_C) e^theta
    U_D = point_d(p).U
    V = (U_D - U_C) * np.exp(theta)
    return logK + (im - 1.0) * (np.log(U_D - U_C) + theta) - im * np.log(U_C + V)


def _chart_to_u(theta, m):
    p = m.params
    U_C = point_c(p).U
    if m.branch == BRANCH_CA:
        return U_C * np.exp(_log_sigmoid(theta))
    if m.branch == BRANCH_AE:
        return -np.exp(theta)
    U_D = point_d(p).U
    return U_C + (U_D - U_C) * np.exp(theta)


def u_of_y(y, m, tol=1e-13):
    """Invert the branch map: the U with y_of_u(U) = y.

    The root solve runs on a log-type chart where the monotone map has
    bounded derivative (see :func:`_chart_log_y`), achieving the relative
    residual  |log y_of_u(U) - log y| <= tol;  U itself is exact to machine
    precision given y.  (Near the fractional-power endpoints a double-
    precision U cannot pin y more tightly than this in absolute terms.)

    Raises
    ------
    DomainError
        If y is outside the open y-range of the branch.
    ComputationError
        If the solve leaves a residual above tol (would indicate a
        monotonicity violation, a bug).
    """
    if tol <= 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    y = float(y)
    if m.branch in (BRANCH_CA, BRANCH_AE):
        if not (y > 0.0):
            raise DomainError(f"{m.branch} branch needs y > 0, got {y}")
    else:
        y_D = y_d_closed_form(m.params, m.K)
        if not (y_D < y < 0.0):
            raise DomainError(f"ED branch needs y_D={y_D:.6g} < y < 0, got {y}")

    target = np.log(abs(y))
    lo, hi = -_CHART_RANGE, _CHART_RANGE
    if m.branch == BRANCH_ED:
        lo = ENDPOINT_GUARD             # theta = 0 is the sonic endpoint U_D
    f = lambda theta: _chart_log_y(theta, m) - target
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == f_hi or np.sign(f_lo) == np.sign(f_hi):
        # beyond chart saturation: the endpoint value is exact to double
        return _chart_to_u(lo if abs(f_lo) < abs(f_hi) else hi, m)
    eps = np.finfo(float).eps
    xtol, rtol = 1e-14, 4 * eps
    theta = brentq(f, lo, hi, xtol=xtol, rtol=rtol, maxiter=200)
    slope_bound = max(1.0 / m.params.mu, 1.0 / m.params.mu - 1.0)
    accept = max(tol, 4.0 * slope_bound * (xtol + rtol * abs(theta))
                 + 16 * eps * max(1.0, abs(target)))
    if abs(f(theta)) > accept:
        raise ComputationError(f"inversion residual above tol at y={y}")
    return _chart_to_u(theta, m)


def du_dy(y, m):
    """dU/dy on the branch, from implicit differentiation of the closed form."""
    U = u_of_y(y, m)
    p = m.params
    im = 1.0 / p.mu
    U_C = point_c(p).U
    # d log|y| / dU
    dlog = -(im - 1.0) / (U_C - U) - im / U if m.branch != BRANCH_ED \
        else (im - 1.0) / (U - U_C) - im / U
    return 1.0 / (y * dlog), U


def burgers_residual(y, m):
    """Residual of the self-similar Burgers equation at an interior point.

    |y U'(y) + ((gamma+1) U - 2 mu) U / ((gamma+1) U - 2)| with U' obtained
    by implicit differentiation; identically zero in exact arithmetic.

    Raises
    ------
    DomainError
        If y is at/outside the branch endpoints, or (gamma+1) U = 2.
    """
    p = m.params
    dUdy, U = du_dy(y, m)
    den = (p.gamma + 1.0) * U - 2.0
    if den == 0.0:
        raise DomainError("Burgers denominator (gamma+1) U - 2 vanishes")
    return abs(y * dUdy + ((p.gamma + 1.0) * U - 2.0 * p.mu) * U / den)


ASYMPTOTIC_POINTS = ("C", "A_right", "A_left", "E_right")


def asymptotic_coeffs(point, m):
    """Leading-order asymptotic data of the special solution near a point.

    Returns a dict with keys ``constant`` (the limit of U where finite),
    ``coefficient`` and ``exponent`` describing the correction term:

      C       : U = U_C - (U_C^(1/(1-mu)) / K^(mu/(1-mu))) y^(mu/(1-mu)) + ...
      A_right : U =  K^mu U_C^(1-mu) y^-mu + ...      (CA side, y -> inf)
      A_left  : U = -K^mu U_C^(1-mu) y^-mu + ...      (AE side, y -> inf)
      E_right : U = -K / y + ...                      (y -> 0+)
    """
    p = m.params
    U_C = point_c(p).U
    mu, K = p.mu, m.K
    if point == "C":
        return {
            "constant": U_C,
            "coefficient": -(U_C ** (1.0 / (1.0 - mu))) / K ** (mu / (1.0 - mu)),
            "exponent": mu / (1.0 - mu),
        }
    if point == "A_right":
        return {"constant": 0.0, "coefficient": K**mu * U_C ** (1.0 - mu),
                "exponent": -mu}
    if point == "A_left":
        return {"constant": 0.0, "coefficient": -(K**mu) * U_C ** (1.0 - mu),
                "exponent": -mu}
    if point == "E_right":
        return {"constant": 0.0, "coefficient": -K, "exponent": -1.0}
    raise DomainError(f"point must be one of {ASYMPTOTIC_POINTS}, got {point!r}")
