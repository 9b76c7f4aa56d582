"""Solver options shared by the first- and second-order services."""

from enum import Enum
from typing import Optional

from pydantic import ConfigDict, Field, model_validator

from .base import BaseModel


class SolverOrder(str, Enum):
    FIRST = "first"
    SECOND = "second"


class SecondOrderMethod(str, Enum):
    AUTO = "auto"
    VARIATIONAL = "variational"
    NEWTON = "newton"


class FunctionalKind(str, Enum):
    """Discrete functional minimized in a variational regime."""

    ALPHA0 = "alpha0"
    J0 = "j0"


class BoundaryKind(str, Enum):
    NEUMANN_ZERO = "neumann_zero"
    DIRICHLET = "dirichlet"


class BoundaryCondition(BaseModel):
    """Conditions on rho at both truncation ends."""

    kind: BoundaryKind = Field(default=BoundaryKind.NEUMANN_ZERO)
    left: Optional[float] = Field(None, gt=0.0, description="rho(r_min)")
    right: Optional[float] = Field(None, gt=0.0, description="rho(r_max)")

    @model_validator(mode="after")
    def dirichlet_values(self):
        if self.kind == BoundaryKind.DIRICHLET and (
            self.left is None or self.right is None
        ):
            raise ValueError("dirichlet boundaries need left and right values")
        return self

    @property
    def is_dirichlet(self) -> bool:
        return self.kind == BoundaryKind.DIRICHLET

    def describe(self) -> str:
        if self.is_dirichlet:
            return f"dirichlet({self.left!r},{self.right!r})"
        return "neumann_zero"


class SolverOptions(BaseModel):
    """Numerical knobs; defaults reproduce the reference experiments."""

    model_config = ConfigDict(extra="forbid")

    order: SolverOrder = SolverOrder.FIRST
    method: SecondOrderMethod = SecondOrderMethod.AUTO

    invert_tol: float = Field(default=1e-10, gt=0.0)
    root_tol: float = Field(default=1e-8, gt=0.0)
    mass_tol: float = Field(default=1e-6, gt=0.0)
    current_tol: float = Field(default=1e-3, gt=0.0)
    gtol: float = Field(default=1e-8, gt=0.0)
    rtol: float = Field(default=1e-8, gt=0.0)
    max_iterations: int = Field(default=200, ge=1)
    newton_max_iterations: int = Field(default=50, ge=1)
    max_expansions: int = Field(default=120, ge=1)
    positivity_floor: float = Field(default=1e-8, gt=0.0)

    boundary: BoundaryCondition = Field(default_factory=BoundaryCondition)
    check_truncation: bool = True
    head_correction: bool = True
    target_mass: Optional[float] = Field(
        None, gt=0.0, description="Total mass of r**(d-1) m; default 1/|dB_1|"
    )

    phi_h_min: float = Field(default=0.01, gt=0.0)
    phi_h_max: float = Field(default=200.0, gt=0.0)
    phi_samples: int = Field(default=50, ge=2)

    decay_threshold: float = Field(default=1e-3, gt=0.0)
    length_scale: float = Field(default=1.0, gt=0.0)
