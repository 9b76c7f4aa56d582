"""Solver services."""

from .first_order import (
    FirstOrderSolver,
    density_at,
    hj_residual,
    mass_functional,
    solve_first_order,
    solve_H,
    solve_zero_current,
)
from .scenario import (
    ExitCode,
    PointResult,
    ScenarioResult,
    ScenarioRunner,
    load_scenario,
)
from .second_order import (
    SecondOrderSolver,
    discrete_gradient,
    functional_alpha0,
    functional_j0,
    minimize_constrained,
    ode_residual_alpha0,
    ode_residual_general,
    reconstruct_u_second_order,
    solve_bvp_newton,
)

__all__ = [
    "ExitCode",
    "FirstOrderSolver",
    "PointResult",
    "ScenarioResult",
    "ScenarioRunner",
    "SecondOrderSolver",
    "density_at",
    "discrete_gradient",
    "functional_alpha0",
    "functional_j0",
    "hj_residual",
    "load_scenario",
    "mass_functional",
    "minimize_constrained",
    "ode_residual_alpha0",
    "ode_residual_general",
    "reconstruct_u_second_order",
    "solve_H",
    "solve_bvp_newton",
    "solve_first_order",
    "solve_zero_current",
]
