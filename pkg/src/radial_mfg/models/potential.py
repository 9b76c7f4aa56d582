"""Radial potential descriptions."""

from enum import Enum
from typing import List

from pydantic import Field, model_validator

from .base import BaseModel


class PotentialKind(str, Enum):
    """Catalog of radial potentials."""

    GAUSSIAN_SINE = "gaussian_sine"
    POWER_SINE = "power_sine"
    GAUSSIAN = "gaussian"
    CONSTANT = "constant"
    TABULATED = "tabulated"
    COMPOSITE = "composite"


class PotentialSpec(BaseModel):
    """A radial potential V(r).

    gaussian_sine: amplitude * exp(-(r/scale)**2 / 2) * sin(frequency*pi*(r + phase))
    power_sine:    amplitude * (1 + r)**(-power) * sin(frequency*pi*(r + phase))
    gaussian:      amplitude * exp(-(r/scale)**2 / 2)
    constant:      amplitude
    tabulated:     piecewise-linear through (radii, values), constant outside
    composite:     offset + sum(weights[i] * components[i](r))
    """

    kind: PotentialKind = Field(default=PotentialKind.CONSTANT)
    amplitude: float = Field(default=0.0, description="Overall factor / constant")
    frequency: float = Field(
        default=1.0, description="omega in sin(omega*pi*(r+phase))"
    )
    phase: float = Field(default=0.25, description="Phase offset inside the sine")
    power: float = Field(default=1.5, description="Decay power p of power_sine")
    scale: float = Field(default=1.0, gt=0.0, description="Gaussian length scale")
    radii: List[float] = Field(default_factory=list)
    values: List[float] = Field(default_factory=list)
    components: List["PotentialSpec"] = Field(default_factory=list)
    weights: List[float] = Field(default_factory=list)
    offset: float = 0.0

    @model_validator(mode="after")
    def check_kind_parameters(self):
        """Reject parameter sets that do not define a potential."""
        if self.kind == PotentialKind.TABULATED:
            if len(self.radii) < 2 or len(self.radii) != len(self.values):
                raise ValueError(
                    "tabulated potentials need >= 2 radii and matching values"
                )
            if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
                raise ValueError("tabulated radii must be strictly increasing")
        if self.kind == PotentialKind.COMPOSITE:
            if len(self.components) != len(self.weights):
                raise ValueError("composite potentials need one weight per component")
        return self

    @classmethod
    def gaussian_sine(cls, frequency: float = 1.0, amplitude: float = 1.0):
        return cls(
            kind=PotentialKind.GAUSSIAN_SINE, amplitude=amplitude, frequency=frequency
        )

    @classmethod
    def power_sine(
        cls, power: float = 1.5, frequency: float = 2.0, amplitude: float = 1.0
    ):
        return cls(
            kind=PotentialKind.POWER_SINE,
            amplitude=amplitude,
            power=power,
            frequency=frequency,
        )

    @classmethod
    def gaussian(cls, amplitude: float = 1.0, scale: float = 1.0):
        return cls(kind=PotentialKind.GAUSSIAN, amplitude=amplitude, scale=scale)

    @classmethod
    def constant(cls, value: float):
        return cls(kind=PotentialKind.CONSTANT, amplitude=value)

    def shifted(self, offset: float) -> "PotentialSpec":
        """V + offset, as a composite."""
        return PotentialSpec(
            kind=PotentialKind.COMPOSITE,
            components=[self],
            weights=[1.0],
            offset=offset,
        )

    def label(self) -> str:
        """Short human-readable description."""
        if self.kind == PotentialKind.GAUSSIAN_SINE:
            return f"gaussian_sine(w={self.frequency:g})"
        if self.kind == PotentialKind.POWER_SINE:
            return f"power_sine(p={self.power:g}, w={self.frequency:g})"
        if self.kind == PotentialKind.GAUSSIAN:
            return "gaussian"
        if self.kind == PotentialKind.CONSTANT:
            return f"constant({self.amplitude:g})"
        if self.kind == PotentialKind.TABULATED:
            return f"tabulated({len(self.radii)} nodes)"
        return f"composite({len(self.components)} terms)"
