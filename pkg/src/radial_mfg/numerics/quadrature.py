"""Trapezoid quadrature on radial grids."""

from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..exceptions import GridError
from ..models.grid import RadialGrid


def _checked(grid: RadialGrid, samples) -> np.ndarray:
    values = np.asarray(samples, dtype=float)
    if values.shape != grid.nodes.shape:
        raise GridError(
            "samples do not match the grid",
            {"samples": values.shape, "nodes": grid.nodes.shape},
        )
    return values


def integrate(grid: RadialGrid, samples) -> float:
    """Weighted sum of nodal samples."""
    values = _checked(grid, samples)
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise GridError(
            "cannot integrate non-finite samples",
            {"index": bad, "r": float(grid.nodes[bad])},
        )
    return float(np.dot(grid.weights, values))


def cumulative_integral(
    grid: RadialGrid, samples, base_index: Optional[int] = None
) -> np.ndarray:
    """Signed running integral from the base node (default: node nearest r=1)."""
    values = _checked(grid, samples)
    if base_index is None:
        base_index = grid.index_of(1.0)
    if not 0 <= base_index < grid.size:
        raise GridError("base_index outside the grid", {"base_index": base_index})
    running = cumulative_trapezoid(values, grid.nodes, initial=0.0)
    return running - running[base_index]
