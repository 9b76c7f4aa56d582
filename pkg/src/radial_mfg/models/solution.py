"""Solver results."""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import Field, field_validator

from .base import ArrayModel, BaseModel, readonly
from .grid import RadialGrid
from .options import BoundaryCondition
from .problem import ProblemSpec


class RadialSolution(ArrayModel):
    """First-order radial solution (m, u, H) on a grid."""

    spec: ProblemSpec
    grid: RadialGrid
    m: np.ndarray
    u: np.ndarray
    H: float
    j: float
    hj_residual: np.ndarray
    current_deviation: np.ndarray
    mass: float = Field(..., description="integral r**(d-1) m dr over its target")
    truncation_shift: Optional[float] = None
    warnings: List[str] = Field(default_factory=list)

    @field_validator("m", "u", "hj_residual", "current_deviation", mode="before")
    @classmethod
    def freeze_array(cls, v):
        return readonly(v)

    @property
    def max_hj_residual(self) -> float:
        return float(np.max(np.abs(self.hj_residual)))

    @property
    def max_current_deviation(self) -> float:
        """Max |u' m**(1-a) r**(d-1) - j| over interior nodes."""
        if self.current_deviation.size <= 2:
            return 0.0
        return float(np.max(np.abs(self.current_deviation[1:-1])))

    @property
    def mass_error(self) -> float:
        return abs(self.mass - 1.0)


class NoSolution(BaseModel):
    """No admissible H exists; carries the mass-versus-H obstruction."""

    reason: str
    j: float
    target: float = Field(..., description="Required value of the mass integral")
    critical_H: Optional[float] = Field(
        None, description="Largest H keeping V - H > 0 on the grid (j = 0)"
    )
    boundary_mass: Optional[float] = Field(
        None, description="Mass integral at the critical H"
    )
    curve: List[Tuple[float, float]] = Field(
        default_factory=list, description="(H, mass integral) samples"
    )


class SecondOrderState(ArrayModel):
    """rho = m**(alpha+1/2) on a grid plus the multiplier H."""

    spec: ProblemSpec
    grid: RadialGrid
    rho: np.ndarray
    H: float
    j: float
    boundary: BoundaryCondition = Field(default_factory=BoundaryCondition)
    method: str = "initial"
    functional_value: Optional[float] = None
    gradient_norm: Optional[float] = None
    residual_norm: Optional[float] = None
    mass_error: Optional[float] = None
    converged: bool = False
    iterations: int = 0
    objective_history: List[float] = Field(default_factory=list)

    @field_validator("rho", mode="before")
    @classmethod
    def freeze_array(cls, v):
        return readonly(v)

    @field_validator("rho")
    @classmethod
    def check_positive(cls, v):
        if np.any(~np.isfinite(v)) or np.any(v <= 0.0):
            raise ValueError("rho must be finite and positive at every node")
        return v

    @property
    def m(self) -> np.ndarray:
        """Density m = rho**(2/(2 alpha + 1))."""
        return self.rho ** (2.0 / (2.0 * self.spec.alpha + 1.0))

    def with_values(self, **changes) -> "SecondOrderState":
        return self.model_copy(update=changes)


class DecayCheck(BaseModel):
    """Sampled V(r) r**sigma along one end of the geometric ladder."""

    end: str
    slope: Optional[float] = None
    outermost: float = 0.0
    decays: bool = True
    samples: List[Tuple[float, float]] = Field(default_factory=list)


class AdmissibilityReport(BaseModel):
    """Findings on exponent window, potential decay and domain/current."""

    d: int
    alpha: float
    beta: float
    j: float
    sigma: float
    window_lower: float
    window_upper: float
    exponent_window: bool
    decay_origin: DecayCheck
    decay_infinity: DecayCheck
    current_compatible: bool = True
    warnings: List[str] = Field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return (
            self.exponent_window
            and self.decay_origin.decays
            and self.decay_infinity.decays
            and self.current_compatible
        )
