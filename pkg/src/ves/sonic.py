"""Local analysis at the sonic points D and B.

At D the s-flow (dH/ds, dU/ds) = (F, G) linearizes to a stable node with
eigenvalues lambda2 < lambda1 < 0 and eigenvectors along the two slope
branches; the ratio beta = lambda2/lambda1 > 1 is the fractional power that
appears in one-sided expansions on the B side of D.  At B the linearization
is a saddle, which is what makes the B -> D integral curve unique.

The one-sided series here carry only the coefficients the analysis pins
down in closed form (first order, plus the fractional beta term at D-left
whose coefficient is a fit product of the connector).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import CriticalPointInfo, KIND_TRIPLE, partials, point_d, slope_branches
from .errors import ComputationError, DomainError

# |beta - nearest integer| below this flags the Poincare-Dulac resonance
RESONANCE_TOL = 1e-9


@dataclass(frozen=True)
class LinearizationAtD:
    """Eigen-data of the s-flow linearization at the sonic point D.

    ``matrix`` has rows ordered (H, U); v1 = (C2(D), 1) goes with lambda1
    (the slow direction every non-special curve lands along), v2 = (C1(D), 1)
    with lambda2.  ``resonant`` records beta within RESONANCE_TOL of an
    integer, in which case the resonant power is excluded from independent
    expansion fitting.
    """

    matrix: np.ndarray
    lambda1: float
    lambda2: float
    v1: np.ndarray
    v2: np.ndarray
    beta: float
    resonant: bool


def linearize_at_d(params):
    """Assemble and verify the linearization of the s-flow at D.

    The matrix is built numerically from the exact partials and checked
    against the closed-form entries; the eigenpairs are verified to 1e-12.

    Raises
    ------
    ComputationError
        If the numerical matrix and the closed forms disagree beyond 1e-10,
        or an eigen-residual exceeds 1e-12 (transcription errors).
    """
    g, m = params.gamma, params.mu
    D = point_d(params)
    F_H, F_U, G_H, G_U = partials(D, params)
    M = np.array([[F_H, F_U], [G_H, G_U]])

    M_closed = np.array([
        [2.0 * (g - 1.0) ** 2 / (3.0 - g) ** 2,
         -(g - 1.0) ** 2 * (g * g - 2.0 * g + 5.0 - (3.0 - g) ** 2 * m) / (3.0 - g) ** 3],
        [(4.0 - 2.0 * (3.0 - g) * m) / ((3.0 - g) * (g - 1.0)),
         ((g + 1.0) * (3.0 - g) * m + g * g - 6.0 * g + 1.0) / (3.0 - g) ** 2],
    ])
    if np.max(np.abs(M - M_closed)) > 1e-10:
        raise ComputationError("matrix at D disagrees with closed-form entries")

    lam1 = 2.0 * (g - 1.0) * (m - 1.0) / (3.0 - g)
    lam2 = ((3.0 - g) * m - g - 1.0) / (3.0 - g)
    cp = CriticalPointInfo(label="D", location=D, kind=KIND_TRIPLE, slopes=None)
    sl = slope_branches(cp, params)
    v1 = np.array([sl.c2, 1.0])
    v2 = np.array([sl.c1, 1.0])
    scale = max(1.0, float(np.max(np.abs(M))))   # entries blow up as gamma -> 3
    for lam, v in ((lam1, v1), (lam2, v2)):
        if np.linalg.norm(M @ v - lam * v) > 1e-12 * scale * np.linalg.norm(v):
            raise ComputationError("eigenpair residual at D above 1e-12")

    beta = lam2 / lam1
    resonant = abs(beta - round(beta)) < RESONANCE_TOL
    return LinearizationAtD(matrix=M, lambda1=lam1, lambda2=lam2,
                            v1=v1, v2=v2, beta=beta, resonant=resonant)


@dataclass(frozen=True)
class LocalExpansion:
    """One-sided series data anchored at y_D or y_B.

    The linear coefficients are closed forms; ``beta_coeff_U`` is present
    only for the D-left side and is None until fitted by the connector.
    Quadratic and higher tails exist but are never computed symbolically.
    ``base_U``, ``base_H`` are the anchor-point values ((U_D, H_D) at D,
    (1, 0) at B).
    """

    anchor: str                      # 'D_left' | 'D_right' | 'B_right'
    y0: float
    base_U: float
    base_H: float
    linear_coeff_U: float
    linear_coeff_H: float
    beta_coeff_U: Optional[float] = None
    beta_power: Optional[float] = None
    has_quadratic_tail: bool = True

    def evaluate(self, y):
        """U, H at y from the first-order series (plus fractional term at D-left)."""
        dy = np.asarray(y) - self.y0
        U = self.base_U + self.linear_coeff_U * dy
        H = self.base_H + self.linear_coeff_H * dy
        if self.beta_coeff_U is not None and self.beta_power is not None:
            U = U + self.beta_coeff_U * np.abs(dy) ** self.beta_power
        return U, H


def expansion_at_d(side, y_D, params, U_beta=None):
    """One-sided first-order expansion of the solution curve at D.

    Right side (the special-solution side, regular series along v2):

        U'(y_D+) = -(gamma+1 - (3-gamma) mu) / ((gamma-1)(3-gamma) y_D)

    Left side (the B -> D side, along v1, carrying the |y - y_D|^beta term):

        U'(y_D-) = -(8 + 4(gamma-3) mu) / ((3-gamma)(gamma+1) y_D)
        H'(y_D-) = 2(gamma-1)[(3-gamma)^2 mu - (gamma^2-2 gamma+5)]
                   / ((3-gamma)^2 (gamma+1) y_D)

    The two U-slopes differ for every admissible (gamma, mu): the solution
    is Lipschitz but not C^1 across the sonic curve.
    """
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    if not np.isfinite(y_D) or y_D >= 0.0:
        raise DomainError(f"y_D must be finite and negative, got {y_D}")
    g, m = params.gamma, params.mu
    D = point_d(params)
    sl = slope_branches(
        CriticalPointInfo("D", D, KIND_TRIPLE, None), params)
    if side == "right":
        uy = -(g + 1.0 - (3.0 - g) * m) / ((g - 1.0) * (3.0 - g) * y_D)
        return LocalExpansion(anchor="D_right", y0=y_D, base_U=D.U, base_H=D.H,
                              linear_coeff_U=uy, linear_coeff_H=sl.c1 * uy)
    uy = -(8.0 + 4.0 * (g - 3.0) * m) / ((3.0 - g) * (g + 1.0) * y_D)
    hy = 2.0 * (g - 1.0) * ((3.0 - g) ** 2 * m - (g * g - 2.0 * g + 5.0)) \
        / ((3.0 - g) ** 2 * (g + 1.0) * y_D)
    beta = linearize_at_d(params).beta
    return LocalExpansion(anchor="D_left", y0=y_D, base_U=D.U, base_H=D.H,
                          linear_coeff_U=uy, linear_coeff_H=hy,
                          beta_coeff_U=U_beta, beta_power=beta)


def expansion_at_b(y_B, params):
    """First-order expansion of the B -> D curve at the vacuum point B.

    With z = log(-y), the curve leaves B with

        dU/dz = (1-gamma)(1+k2)/gamma,     dH/dz = (gamma-1)(mu-1),

    both removable-singularity limits of G/Delta and F/Delta, so

        U'(y_B) = (1-gamma)(1+k2) / (gamma y_B) > 0,
        H'(y_B) = (gamma-1)(mu-1) / y_B > 0       (y_B < 0).

    H'(y_B) > 0 is the physical-vacuum generator: the enthalpy leaves the
    moving boundary with a nonzero finite slope.
    """
    if not np.isfinite(y_B) or y_B >= 0.0:
        raise DomainError(f"y_B must be finite and negative, got {y_B}")
    g, m = params.gamma, params.mu
    uy = (1.0 - g) * (1.0 + params.k2) / (g * y_B)
    hy = (g - 1.0) * (m - 1.0) / y_B
    return LocalExpansion(anchor="B_right", y0=y_B, base_U=1.0, base_H=0.0,
                          linear_coeff_U=uy, linear_coeff_H=hy)


def saddle_data_at_b(params):
    """Eigenvalues (mu - 1, (gamma-1)(1-mu)) of the s-flow linearized at B.

    Their product is negative for all admissible parameters: B is a saddle,
    hence exactly one integral curve leaves it along each branch.
    """
    g, m = params.gamma, params.mu
    return m - 1.0, (g - 1.0) * (1.0 - m)
