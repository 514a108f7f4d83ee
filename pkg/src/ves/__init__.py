"""Self-similar waiting-time vacuum solutions of the compressible Euler equations.

Construction of the full phase-plane trajectory C -> A -> E -> D -> B for
an adiabatic exponent gamma in (1, 3) and similarity parameter mu in (0, 1),
evaluation of the physical fields (rho, u, h, c) and the vacuum boundary
b(t), and an independent numerical verification battery plus a
finite-volume cross-check of the waiting-time behavior.
"""

from .connector import ProfileCurve, connect_bd, fit_beta_coeff, h_g, parametrize_y
from .core import (CriticalPointInfo, GasParams, PhasePoint, SlopeBranches,
                   critical_points, delta_fn, derived_constants, f_rhs, g_rhs,
                   partials, slope_branches)
from .errors import ComputationError, DomainError, IntegrationError, SolverError
from .fv import FVState, evolve, init_grid, step
from .profile import GlobalSolution, PhysicalState, assemble, boundary, \
    eval_physical, initial_data
from .sonic import (LinearizationAtD, LocalExpansion, expansion_at_b,
                    expansion_at_d, linearize_at_d, saddle_data_at_b)
from .special import (SpecialSolutionMap, asymptotic_coeffs, burgers_residual,
                      h_sp, u_of_y, y_d_closed_form, y_of_u)
from .verifier import CheckReport, run_all_checks

__version__ = "0.1.0"

__all__ = [
    "GasParams", "PhasePoint", "SlopeBranches", "CriticalPointInfo",
    "derived_constants", "f_rhs", "g_rhs", "delta_fn", "partials",
    "critical_points", "slope_branches",
    "SpecialSolutionMap", "h_sp", "y_of_u", "u_of_y", "burgers_residual",
    "asymptotic_coeffs", "y_d_closed_form",
    "LinearizationAtD", "LocalExpansion", "linearize_at_d", "expansion_at_d",
    "expansion_at_b", "saddle_data_at_b",
    "ProfileCurve", "h_g", "connect_bd", "parametrize_y", "fit_beta_coeff",
    "GlobalSolution", "PhysicalState", "assemble", "boundary",
    "eval_physical", "initial_data",
    "CheckReport", "run_all_checks",
    "FVState", "init_grid", "step", "evolve",
    "DomainError", "ComputationError", "IntegrationError", "SolverError",
]
