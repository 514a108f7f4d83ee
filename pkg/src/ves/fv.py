"""Finite-volume cross-check of the waiting-time behavior.

A first-order conservative scheme for the barotropic Euler system

    rho_t + (rho u)_x = 0,
    (rho u)_t + (rho u^2 + A rho^gamma)_x = 0,

evolves the analytic initial profile forward through the singularity.  The
flux is local Lax-Friedrichs (Rusanov) with interface wave speed |u| + c;
robustness at the vacuum front comes from a density floor plus a dry-cell
treatment (momentum zeroed below ``dry_tol``) as used in wetting/drying
shallow-water solvers.  The boundary tracker records the left edge of the
leftmost cell whose density exceeds a fixed threshold.

This is a qualitative check: the scheme is first-order and its front
representation smears over several cells; see the convergence study for
the quantitative contract (interior L1 error of order >= 0.8).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SolverError
from .profile import eval_physical

DENSITY_FLOOR = 1e-12
DRY_TOL = 1e-7          # momenta below this density are zeroed (dry cells)
TRACK_THRESHOLD = 1e-8  # boundary tracker density threshold


@dataclass
class FVState:
    """Cell-averaged conserved variables on a uniform grid."""

    t: float
    x_lo: float
    x_hi: float
    n: int
    rho: np.ndarray
    mom: np.ndarray
    gamma: float
    A_pressure: float
    floor_activations: int = 0
    floor_mass: float = 0.0
    edges: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.edges is None:
            self.edges = np.linspace(self.x_lo, self.x_hi, self.n + 1)

    @property
    def dx(self):
        return (self.x_hi - self.x_lo) / self.n

    @property
    def centers(self):
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    def mass(self):
        return float(np.sum(self.rho) * self.dx)


def init_grid(sol, T, x_lo, x_hi, n, quad_points=4):
    """Cell averages of the analytic fields at t = -T; zeros for x < 0.

    Each (partially) gas-filled cell is averaged with a ``quad_points``-node
    Gauss-Legendre rule over its intersection with x > 0.
    """
    if not (x_lo < 0.0 < x_hi):
        raise DomainError("need x_lo < 0 < x_hi so the boundary can move left")
    if T <= 0.0:
        raise DomainError(f"T must be positive, got {T}")
    if n < 64:
        raise DomainError(f"need n >= 64 cells, got {n}")
    p = sol.params
    edges = np.linspace(x_lo, x_hi, n + 1)
    rho = np.zeros(n)
    mom = np.zeros(n)
    gl_x, gl_w = np.polynomial.legendre.leggauss(quad_points)
    gl_x = 0.5 * (gl_x + 1.0)
    gl_w = 0.5 * gl_w
    for i in range(n):
        a, b = edges[i], edges[i + 1]
        a_eff = max(a, 0.0)
        if b <= 0.0:
            continue
        pts = a_eff + (b - a_eff) * gl_x
        wts = gl_w * (b - a_eff) / (b - a)
        for x, w in zip(pts, wts):
            s = eval_physical(sol, -T, float(x))
            rho[i] += w * s.rho
            mom[i] += w * s.rho * s.u
    return FVState(t=-T, x_lo=x_lo, x_hi=x_hi, n=n, rho=rho, mom=mom,
                   gamma=p.gamma, A_pressure=p.A_pressure, edges=edges)


def _primitives(rho, mom, gamma, A):
    u = np.where(rho > DENSITY_FLOOR, mom / np.maximum(rho, DENSITY_FLOOR), 0.0)
    pres = A * rho**gamma
    c = np.where(rho > DENSITY_FLOOR,
                 np.sqrt(gamma * pres / np.maximum(rho, DENSITY_FLOOR)), 0.0)
    return u, pres, c


def step(state, cfl, dry_tol=DRY_TOL):
    """One forward-Euler conservative update with the Rusanov flux.

    dt = cfl * dx / max(|u| + c); zero-gradient ghost cells on both ends
    (the left end sits in deep vacuum in the intended runs).  Returns the
    new state; the floor counters accumulate.

    Cells below ``dry_tol`` have their momentum zeroed before the flux
    evaluation (the wetting/drying treatment of shallow-water solvers): it
    suppresses spurious advection of near-vacuum cells polluted by the
    numerical diffusion of the first-order flux, and acts only at density
    scales around the boundary-tracker threshold.

    Raises
    ------
    SolverError
        On NaN, or negative density surviving the floor.
    """
    if not (0.0 < cfl <= 0.5):
        raise DomainError(f"cfl must lie in (0, 0.5], got {cfl}")
    rho, mom = state.rho, state.mom
    gamma, A = state.gamma, state.A_pressure
    dx = state.dx

    mom = np.where(rho < dry_tol, 0.0, mom)
    u, pres, c = _primitives(rho, mom, gamma, A)
    amax = float(np.max(np.abs(u) + c))
    dt = cfl * dx / max(amax, 1e-300)

    rho_g = np.concatenate([rho[:1], rho, rho[-1:]])
    mom_g = np.concatenate([mom[:1], mom, mom[-1:]])
    u_g, p_g, c_g = _primitives(rho_g, mom_g, gamma, A)
    lam = np.abs(u_g) + c_g
    a_if = np.maximum(lam[:-1], lam[1:])
    f1 = mom_g
    f2 = mom_g * u_g + p_g
    F1 = 0.5 * (f1[:-1] + f1[1:]) - 0.5 * a_if * (rho_g[1:] - rho_g[:-1])
    F2 = 0.5 * (f2[:-1] + f2[1:]) - 0.5 * a_if * (mom_g[1:] - mom_g[:-1])

    rho_new = rho - dt / dx * (F1[1:] - F1[:-1])
    mom_new = mom - dt / dx * (F2[1:] - F2[:-1])

    bad = rho_new < DENSITY_FLOOR
    n_bad = int(np.count_nonzero(bad & (rho_new != 0.0)))
    floor_mass = float(np.sum(np.abs(rho_new[bad])) * dx)
    rho_new = np.where(bad, 0.0, rho_new)
    mom_new = np.where(bad, 0.0, mom_new)

    if np.any(~np.isfinite(rho_new)) or np.any(~np.isfinite(mom_new)):
        raise SolverError("NaN/Inf in the conserved variables after update")
    if np.any(rho_new < 0.0):
        raise SolverError("negative density survived the floor")

    return FVState(t=state.t + dt, x_lo=state.x_lo, x_hi=state.x_hi,
                   n=state.n, rho=rho_new, mom=mom_new, gamma=gamma,
                   A_pressure=A,
                   floor_activations=state.floor_activations + n_bad,
                   floor_mass=state.floor_mass + floor_mass,
                   edges=state.edges), (float(F1[0]), float(F1[-1]), dt)


def boundary_position(state, threshold=TRACK_THRESHOLD):
    """Left edge of the leftmost cell with density above the threshold."""
    above = state.rho > threshold
    if not np.any(above):
        return float(state.x_hi)
    return float(state.edges[int(np.argmax(above))])


def evolve(state, t_end, cfl, sol=None, dry_tol=DRY_TOL,
           threshold=TRACK_THRESHOLD, n_samples=200):
    """Advance to t_end, recording the tracked boundary trajectory.

    Returns (final_state, trajectory) with trajectory rows
    (t, b_num, b_analytic); b_analytic needs ``sol`` (else NaN).
    """
    if t_end <= state.t:
        raise DomainError(f"t_end={t_end} must exceed state.t={state.t}")
    sample_dt = (t_end - state.t) / max(n_samples, 1)
    next_sample = state.t
    traj = []
    while state.t < t_end - 1e-14:
        state, (_, _, dt) = step(state, cfl, dry_tol=dry_tol)
        if state.t >= next_sample or state.t >= t_end - 1e-14:
            next_sample = state.t + sample_dt
            b_num = boundary_position(state, threshold)
            if sol is not None:
                b_an = 0.0 if state.t < 0.0 else sol.y_B * state.t ** sol.params.delta
            else:
                b_an = float("nan")
            traj.append((float(state.t), b_num, b_an))
    return state, traj


def interior_l1_error(state, sol, x_lo, x_hi):
    """L1 density error against the analytic solution on [x_lo, x_hi]."""
    xc = state.centers
    m = (xc >= x_lo) & (xc <= x_hi)
    exact = np.array([eval_physical(sol, state.t, float(x)).rho for x in xc[m]])
    return float(np.sum(np.abs(state.rho[m] - exact)) * state.dx)


def export_trajectory_csv(traj, path):
    """Write the boundary trajectory as CSV ``t,b_num,b_analytic``."""
    with open(path, "w") as f:
        f.write("t,b_num,b_analytic\n")
        for t, b_num, b_an in traj:
            f.write(f"{t:.17g},{b_num:.17g},{b_an:.17g}\n")


def export_snapshot_csv(state, path):
    """Write the current cell averages as CSV ``x,rho,u``."""
    u, _, _ = _primitives(state.rho, state.mom, state.gamma, state.A_pressure)
    with open(path, "w") as f:
        f.write("x,rho,u\n")
        for x, r, uu in zip(state.centers, state.rho, u):
            f.write(f"{x:.17g},{r:.17g},{uu:.17g}\n")
