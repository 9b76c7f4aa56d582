"""Radial grid on a truncated half-line."""

from enum import Enum

import numpy as np
from pydantic import field_validator

from .base import ArrayModel, readonly


class Grading(str, Enum):
    """Node distribution of a radial grid."""

    UNIFORM = "uniform"
    GEOMETRIC = "geometric"
    COMPOSITE = "composite"


class RadialGrid(ArrayModel):
    """Nodes in [r_min, r_max] with composite-trapezoid weights."""

    nodes: np.ndarray
    weights: np.ndarray
    grading: Grading = Grading.UNIFORM

    @field_validator("nodes", "weights", mode="before")
    @classmethod
    def freeze_array(cls, v):
        return readonly(v)

    @field_validator("nodes")
    @classmethod
    def check_increasing(cls, v):
        if v.ndim != 1 or v.size < 2:
            raise ValueError("a grid needs at least two nodes")
        if np.any(np.diff(v) <= 0.0):
            raise ValueError("grid nodes must be strictly increasing")
        return v

    @field_validator("weights")
    @classmethod
    def check_weights(cls, v):
        if np.any(v < 0.0):
            raise ValueError("quadrature weights must be nonnegative")
        return v

    @property
    def r_min(self) -> float:
        return float(self.nodes[0])

    @property
    def r_max(self) -> float:
        return float(self.nodes[-1])

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    @property
    def steps(self) -> np.ndarray:
        """Cell widths h_k = r_{k+1} - r_k."""
        return np.diff(self.nodes)

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.nodes[1:] + self.nodes[:-1])

    def index_of(self, r: float) -> int:
        """Index of the node nearest to r."""
        return int(np.argmin(np.abs(self.nodes - r)))

    def describe(self) -> str:
        return f"{self.grading}[{self.r_min:g},{self.r_max:g}]x{self.size}"
