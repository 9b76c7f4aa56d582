"""Three-point finite-difference stencils on nonuniform grids."""

from typing import NamedTuple

import numpy as np

from ..exceptions import GridError
from ..models.grid import RadialGrid


class Stencil(NamedTuple):
    """Coefficients acting on (f[i-1], f[i], f[i+1]) at interior nodes."""

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray

    def apply(self, values: np.ndarray) -> np.ndarray:
        return (
            self.lower * values[:-2]
            + self.diag * values[1:-1]
            + self.upper * values[2:]
        )


def first_derivative_stencil(grid: RadialGrid) -> Stencil:
    """Derivative of the local quadratic interpolant."""
    if grid.size < 3:
        raise GridError("stencils need at least three nodes")
    h1 = grid.steps[:-1]
    h2 = grid.steps[1:]
    return Stencil(
        lower=-h2 / (h1 * (h1 + h2)),
        diag=(h2 - h1) / (h1 * h2),
        upper=h1 / (h2 * (h1 + h2)),
    )


def second_derivative_stencil(grid: RadialGrid) -> Stencil:
    """Second derivative of the local quadratic interpolant."""
    if grid.size < 3:
        raise GridError("stencils need at least three nodes")
    h1 = grid.steps[:-1]
    h2 = grid.steps[1:]
    return Stencil(
        lower=2.0 / (h1 * (h1 + h2)),
        diag=-2.0 / (h1 * h2),
        upper=2.0 / (h2 * (h1 + h2)),
    )
