"""Problem data: dimension, exponents, current and domain."""

from enum import Enum
from typing import Optional

from pydantic import Field, model_validator

from .base import BaseModel
from .coupling import CouplingSpec
from .potential import PotentialSpec


class Domain(str, Enum):
    """Spatial domain of the stationary system."""

    FULL_SPACE = "full_space"
    PUNCTURED_SPACE = "punctured_space"


class ProblemSpec(BaseModel):
    """Radial congestion MFG data."""

    d: int = Field(default=2, ge=2, description="Space dimension")
    alpha: float = Field(..., ge=0.0, lt=2.0, description="Congestion exponent")
    beta: float = Field(default=1.0, gt=0.0, description="Coupling exponent")
    j: float = Field(default=0.0, description="Radial current")
    domain: Domain = Field(default=Domain.PUNCTURED_SPACE)
    potential: PotentialSpec = Field(default_factory=PotentialSpec)
    coupling: Optional[CouplingSpec] = Field(
        None, description="Coupling g; defaults to the power law m**beta"
    )

    @model_validator(mode="after")
    def full_space_has_no_current(self):
        """A smooth radial solution on R^d has u'(0)=0, hence j=0."""
        if self.domain == Domain.FULL_SPACE and self.j != 0.0:
            raise ValueError("full_space problems only admit the current j = 0")
        return self

    @property
    def sigma(self) -> float:
        """Exponent 2*beta*(d-1)/(2+beta-alpha)."""
        return 2.0 * self.beta * (self.d - 1) / (2.0 + self.beta - self.alpha)

    @property
    def is_full_space(self) -> bool:
        return self.domain == Domain.FULL_SPACE

    def curve(self) -> "CongestionCurve":
        """The congestion map F_j for this problem."""
        return CongestionCurve(d=self.d, alpha=self.alpha, beta=self.beta, j=self.j)

    def coupling_spec(self) -> CouplingSpec:
        """Explicit coupling, falling back to g(m) = m**beta."""
        if self.coupling is not None:
            return self.coupling
        return CouplingSpec(beta=self.beta)

    def with_alpha(self, alpha: float) -> "ProblemSpec":
        return self.model_copy(update={"alpha": alpha})


class CongestionCurve(BaseModel):
    """F_j(t) = (j**2/2) t**((alpha-2)/beta) - t on t > 0."""

    d: int = Field(default=2, ge=1)
    alpha: float = Field(..., ge=0.0, lt=2.0)
    beta: float = Field(default=1.0, gt=0.0)
    j: float = 0.0

    @property
    def sigma(self) -> float:
        return 2.0 * self.beta * (self.d - 1) / (2.0 + self.beta - self.alpha)

    @property
    def power(self) -> float:
        """Exponent (alpha-2)/beta of the current term."""
        return (self.alpha - 2.0) / self.beta

    @property
    def zero(self) -> float:
        """Closed-form root t* = (j**2/2)**(beta/(2+beta-alpha))."""
        return (0.5 * self.j * self.j) ** (self.beta / (2.0 + self.beta - self.alpha))
