"""Scenario documents driving the CLI."""

from pathlib import Path
from typing import List, Optional

from pydantic import ConfigDict, Field, model_validator

from .base import BaseModel
from .coupling import CouplingSpec
from .grid import Grading
from .options import SolverOptions
from .potential import PotentialKind, PotentialSpec
from .problem import Domain, ProblemSpec


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ProblemSection(StrictModel):
    d: int = Field(default=2, ge=2)
    alpha: float = Field(default=1.3, ge=0.0, lt=2.0)
    beta: float = Field(default=1.0, gt=0.0)
    j: float = 1.0
    domain: Domain = Domain.PUNCTURED_SPACE
    coupling: Optional[CouplingSpec] = None

    @model_validator(mode="after")
    def full_space_has_no_current(self):
        if self.domain == Domain.FULL_SPACE and self.j != 0.0:
            raise ValueError("full_space problems only admit the current j = 0")
        return self


class GridSection(StrictModel):
    r_min: float = Field(default=1e-4, gt=0.0)
    r_max: float = Field(default=100.0, gt=0.0)
    n: int = Field(default=5000, ge=2)
    grading: Grading = Grading.COMPOSITE

    @model_validator(mode="after")
    def ordered(self):
        if self.r_max <= self.r_min:
            raise ValueError("grid.r_max must exceed grid.r_min")
        return self


class SweepSection(StrictModel):
    alpha: List[float] = Field(default_factory=list)
    frequency: List[float] = Field(default_factory=list)


class OutputSection(StrictModel):
    directory: Optional[Path] = None
    emit_csv: bool = True
    emit_svg: bool = True
    emit_report: bool = True


class SweepPoint(BaseModel):
    """One parameter point of a scenario."""

    index: int
    alpha: float
    frequency: Optional[float] = None

    @property
    def label(self) -> str:
        text = f"alpha_{self.alpha:g}"
        if self.frequency is not None:
            text += f"_w{self.frequency:g}"
        return text


class ScenarioConfig(StrictModel):
    """A complete, schema-validated scenario."""

    name: str = "scenario"
    description: str = ""
    problem: ProblemSection = Field(default_factory=ProblemSection)
    potential: PotentialSpec = Field(default_factory=PotentialSpec)
    grid: GridSection = Field(default_factory=GridSection)
    solver: SolverOptions = Field(default_factory=SolverOptions)
    sweep: Optional[SweepSection] = None
    output: OutputSection = Field(default_factory=OutputSection)

    @model_validator(mode="after")
    def frequency_sweep_needs_sine(self):
        if self.sweep and self.sweep.frequency:
            if self.potential.kind not in (
                PotentialKind.GAUSSIAN_SINE,
                PotentialKind.POWER_SINE,
            ):
                raise ValueError("frequency sweeps need a sine potential")
        return self

    def points(self) -> List[SweepPoint]:
        """Sweep points in document order (alpha outer, frequency inner)."""
        alphas = (self.sweep.alpha if self.sweep else []) or [self.problem.alpha]
        frequencies = self.sweep.frequency if self.sweep else []
        points = []
        for alpha in alphas:
            for frequency in frequencies or [None]:
                points.append(
                    SweepPoint(index=len(points), alpha=alpha, frequency=frequency)
                )
        return points

    def problem_for(self, point: SweepPoint) -> ProblemSpec:
        """ProblemSpec at one sweep point."""
        potential = self.potential
        if point.frequency is not None:
            potential = potential.model_copy(update={"frequency": point.frequency})
        return ProblemSpec(
            d=self.problem.d,
            alpha=point.alpha,
            beta=self.problem.beta,
            j=self.problem.j,
            domain=self.problem.domain,
            potential=potential,
            coupling=self.problem.coupling,
        )
