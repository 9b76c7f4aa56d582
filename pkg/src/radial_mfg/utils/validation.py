"""Validation utilities."""

from typing import List, Optional, Tuple

import numpy as np

from ..models.options import SolverOptions
from ..models.solution import RadialSolution, SecondOrderState

HJ_TOLERANCE = 1e-6


def validate_first_order(
    solution: RadialSolution, options: Optional[SolverOptions] = None
) -> Tuple[bool, List[str]]:
    """Check a first-order solution against the acceptance tolerances."""
    options = options or SolverOptions()
    errors = []

    if np.any(~np.isfinite(solution.m)) or np.any(solution.m <= 0.0):
        errors.append("Density is not finite and positive at every node")

    if solution.max_hj_residual > HJ_TOLERANCE:
        errors.append(
            f"Hamilton-Jacobi residual {solution.max_hj_residual:.3e} "
            f"exceeds {HJ_TOLERANCE:g}"
        )

    if solution.max_current_deviation > options.current_tol:
        errors.append(
            f"Current deviation {solution.max_current_deviation:.3e} "
            f"exceeds {options.current_tol:g}"
        )

    if solution.mass_error > options.mass_tol:
        errors.append(
            f"Mass error {solution.mass_error:.3e} exceeds {options.mass_tol:g}"
        )

    return len(errors) == 0, errors


def validate_second_order(
    state: SecondOrderState, options: Optional[SolverOptions] = None
) -> Tuple[bool, List[str]]:
    """Check a second-order state for convergence and mass."""
    options = options or SolverOptions()
    errors = []

    if not state.converged:
        errors.append(f"{state.method} solve did not converge")

    if state.mass_error is None or state.mass_error > options.mass_tol:
        errors.append(f"Mass error {state.mass_error} exceeds {options.mass_tol:g}")

    if state.residual_norm is not None and not np.isfinite(state.residual_norm):
        errors.append("Interior residual is not finite")

    return len(errors) == 0, errors
