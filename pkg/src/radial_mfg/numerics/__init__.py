"""Grids, quadrature, stencils and monotone root finding."""

from .grid import build_grid, trapezoid_weights
from .quadrature import cumulative_integral, integrate
from .roots import MonotoneRootProblem, solve_monotone
from .stencils import Stencil, first_derivative_stencil, second_derivative_stencil

__all__ = [
    "MonotoneRootProblem",
    "Stencil",
    "build_grid",
    "cumulative_integral",
    "first_derivative_stencil",
    "integrate",
    "second_derivative_stencil",
    "solve_monotone",
    "trapezoid_weights",
]
