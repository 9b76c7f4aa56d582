"""Construction of graded radial grids."""

import logging

import numpy as np

from ..exceptions import GridError
from ..models.grid import Grading, RadialGrid

logger = logging.getLogger(__name__)


def trapezoid_weights(nodes: np.ndarray) -> np.ndarray:
    """Composite-trapezoid weights for arbitrary increasing nodes."""
    steps = np.diff(nodes)
    weights = np.zeros_like(nodes)
    weights[:-1] += 0.5 * steps
    weights[1:] += 0.5 * steps
    return weights


def _composite_nodes(r_min: float, r_max: float, n: int) -> np.ndarray:
    """Geometric head up to the split radius, uniform tail beyond it.

    The split is r = 1 whenever it lies inside the interval, so the
    normalization point of the value function is a grid node.
    """
    split = 1.0 if r_min < 1.0 < r_max else float(np.sqrt(r_min * r_max))
    head_size = min(max(2, n // 3), n - 1)
    head = np.geomspace(r_min, split, head_size)
    tail = np.linspace(split, r_max, n - head_size + 1)[1:]
    return np.concatenate((head, tail))


def build_grid(
    r_min: float, r_max: float, n: int, grading: Grading = Grading.COMPOSITE
) -> RadialGrid:
    """Nodes on [r_min, r_max] with trapezoid weights."""
    if not (np.isfinite(r_min) and np.isfinite(r_max)):
        raise GridError("grid bounds must be finite")
    if r_min <= 0.0:
        raise GridError("r_min must be positive", {"r_min": r_min})
    if r_max <= r_min:
        raise GridError("r_max must exceed r_min", {"r_min": r_min, "r_max": r_max})
    if n < 2:
        raise GridError("a grid needs at least two nodes", {"n": n})

    grading = Grading(grading)
    if grading == Grading.UNIFORM:
        nodes = np.linspace(r_min, r_max, n)
    elif grading == Grading.GEOMETRIC or n < 3:
        nodes = np.geomspace(r_min, r_max, n)
    else:
        nodes = _composite_nodes(r_min, r_max, n)

    nodes[0], nodes[-1] = r_min, r_max
    grid = RadialGrid(nodes=nodes, weights=trapezoid_weights(nodes), grading=grading)
    logger.debug(f"Built grid {grid.describe()}")
    return grid
