"""Exact algebra of the self-similar gas-dynamics phase plane.

The similarity reduction of the isentropic Euler equations with a vacuum
boundary produces a planar system for the scaled enthalpy H and velocity U,

    y dH/dy = F(U, H) / Delta(U, H),
    y dU/dy = G(U, H) / Delta(U, H),

with

    F = 2 H [H - (U^2 - k1 U + mu)],
    G = H (U + k2) - U (U - 1)(U - mu),
    Delta = (U - 1)^2 - H.

This module holds the gas-parameter record, the vector field and its exact
partial derivatives, the five relevant critical points, and the two slope
branches dH/dU of integral curves at each finite critical point.

Everything here is closed-form algebra; no integration is performed.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import ComputationError, DomainError

CRITICAL_LABELS = ("A", "B", "C", "D", "E")

KIND_TRIPLE = "triple"   # F = G = Delta = 0
KIND_DOUBLE = "double"   # F = G = 0, Delta != 0


class PhasePoint(NamedTuple):
    """A point (U, H) of the phase plane; H >= 0 on physical branches."""

    U: float
    H: float


class SlopeBranches(NamedTuple):
    """The two limiting slopes dH/dU of integral curves at a critical point.

    Ordering is fixed by matching c1 against the closed forms of the
    analysis (c1 is the slope of the parabolic special solution at A, C, D
    and the trivial H == 0 branch at B), not by the sign of the square root.
    """

    c1: float
    c2: float


@dataclass(frozen=True)
class GasParams:
    """Adiabatic exponent, similarity exponent, and derived constants.

    ``delta`` = 1/mu is the space-time similarity exponent; ``A_pressure``
    is fixed by the normalization A*gamma/(gamma-1) = 1 so that the specific
    enthalpy is rho**(gamma-1).
    """

    gamma: float
    mu: float
    delta: float
    k1: float
    k2: float
    A_pressure: float

    def __post_init__(self):
        if not np.isfinite(self.gamma) or not (1.0 < self.gamma < 3.0):
            raise DomainError(f"gamma must lie in (1, 3), got {self.gamma}")
        if not np.isfinite(self.mu) or not (0.0 < self.mu < 1.0):
            raise DomainError(f"mu must lie in (0, 1), got {self.mu}")
        if abs(self.delta * self.mu - 1.0) > 1e-12:
            raise DomainError("delta * mu must equal 1 to machine precision")


def derived_constants(gamma, mu):
    """Build a :class:`GasParams` from (gamma, mu).

    k1 = ((gamma+1) + mu (3-gamma)) / 2 and k2 = 2 (1-mu)/(gamma-1) are the
    combinations appearing in the phase-plane vector field.

    Raises
    ------
    DomainError
        If gamma is outside (1, 3) or mu is outside (0, 1).
    """
    gamma = float(gamma)
    mu = float(mu)
    if not np.isfinite(gamma) or not (1.0 < gamma < 3.0):
        raise DomainError(f"gamma must lie in (1, 3), got {gamma}")
    if not np.isfinite(mu) or not (0.0 < mu < 1.0):
        raise DomainError(f"mu must lie in (0, 1), got {mu}")
    return GasParams(
        gamma=gamma,
        mu=mu,
        delta=1.0 / mu,
        k1=((gamma + 1.0) + mu * (3.0 - gamma)) / 2.0,
        k2=2.0 * (1.0 - mu) / (gamma - 1.0),
        A_pressure=(gamma - 1.0) / gamma,
    )


# ---------------------------------------------------------------------------
# Vector field and partials
# ---------------------------------------------------------------------------

def f_rhs(point, params):
    """F(U, H) = 2 H [H - (U^2 - k1 U + mu)]."""
    U, H = point
    return 2.0 * H * (H - (U * U - params.k1 * U + params.mu))


def g_rhs(point, params):
    """G(U, H) = H (U + k2) - U (U - 1)(U - mu)."""
    U, H = point
    return H * (U + params.k2) - U * (U - 1.0) * (U - params.mu)


def delta_fn(point):
    """Delta(U, H) = (U - 1)^2 - H; the sonic curve is its zero set."""
    U, H = point
    return (U - 1.0) ** 2 - H


def partials(point, params):
    """Exact partial derivatives (F_H, F_U, G_H, G_U) at a phase point."""
    U, H = point
    F_H = 4.0 * H - 2.0 * (U * U - params.k1 * U + params.mu)
    F_U = -2.0 * H * (2.0 * U - params.k1)
    G_H = U + params.k2
    G_U = H - 3.0 * U * U + 2.0 * (1.0 + params.mu) * U - params.mu
    return F_H, F_U, G_H, G_U


# ---------------------------------------------------------------------------
# Critical points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriticalPointInfo:
    """Location, type, and slope branches of one critical point.

    ``location`` is None for E, which sits at (U, H) = (inf, inf); its
    analysis lives entirely in the 1/U chart of the special solution and it
    carries no slope data.
    """

    label: str
    location: Optional[PhasePoint]
    kind: str
    slopes: Optional[SlopeBranches]
    at_infinity: bool = False


def point_a(params):
    return PhasePoint(0.0, 0.0)


def point_b(params):
    return PhasePoint(1.0, 0.0)


def point_c(params):
    g, m = params.gamma, params.mu
    return PhasePoint(2.0 * m / (g + 1.0), ((g - 1.0) / (g + 1.0)) ** 2 * m * m)


def point_d(params):
    g = params.gamma
    return PhasePoint(2.0 / (3.0 - g), ((g - 1.0) / (3.0 - g)) ** 2)


def extra_double_point(params):
    """The double point (mu, 0); exposed for diagnostics only.

    It plays no role in the trajectory C -> A -> E -> D -> B and is excluded
    from :func:`critical_points`.
    """
    return PhasePoint(params.mu, 0.0)


def _closed_form_c1(label, params):
    """Slope of the branch tagged c1, in closed form, at A, B, C, D."""
    g, m = params.gamma, params.mu
    if label == "A":
        return 0.0
    if label == "B":
        return 0.0
    if label == "C":
        return (g - 1.0) ** 2 * m / (g + 1.0)
    if label == "D":
        return (g - 1.0) ** 2 / (3.0 - g)
    raise DomainError(f"no slope branches at {label!r}")


def slope_branches(cp, params):
    """Both limiting slopes dH/dU at a finite critical point.

    The two roots of the L'Hospital quadratic

        H'(U) = (F_H - G_U +- sqrt((G_U - F_H)^2 + 4 F_U G_H)) / (2 G_H)

    are ordered so that c1 coincides with the closed-form branch of the
    special solution (respectively the H == 0 branch at B).

    Raises
    ------
    ComputationError
        If the discriminant is negative (never for parameters in range).
    """
    if cp.label == "E" or cp.location is None:
        raise DomainError("E is at infinity and carries no slope branches")
    F_H, F_U, G_H, G_U = partials(cp.location, params)
    disc = (G_U - F_H) ** 2 + 4.0 * F_U * G_H
    if disc < 0.0:
        raise ComputationError(f"negative slope discriminant {disc} at {cp.label}")
    root = np.sqrt(disc)
    plus = (F_H - G_U + root) / (2.0 * G_H)
    minus = (F_H - G_U - root) / (2.0 * G_H)
    target = _closed_form_c1(cp.label, params)
    if abs(plus - target) <= abs(minus - target):
        return SlopeBranches(c1=plus, c2=minus)
    return SlopeBranches(c1=minus, c2=plus)


def critical_points(params):
    """The five critical points A, B, C, D, E with kinds and slope branches.

    A = (0, 0) and C are double points (Delta != 0); B = (1, 0) and D are
    triple points on the sonic curve; E is the at-infinity point reached as
    y -> 0 after the singularity.
    """
    locs = {
        "A": point_a(params),
        "B": point_b(params),
        "C": point_c(params),
        "D": point_d(params),
    }
    kinds = {"A": KIND_DOUBLE, "B": KIND_TRIPLE, "C": KIND_DOUBLE, "D": KIND_TRIPLE}
    out = []
    for label in ("A", "B", "C", "D"):
        cp = CriticalPointInfo(label=label, location=locs[label],
                               kind=kinds[label], slopes=None)
        out.append(CriticalPointInfo(label=label, location=locs[label],
                                     kind=kinds[label],
                                     slopes=slope_branches(cp, params)))
    out.append(CriticalPointInfo(label="E", location=None, kind=KIND_DOUBLE,
                                 slopes=None, at_infinity=True))
    return out
