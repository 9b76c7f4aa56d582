"""Data models for radial-mfg."""

from .base import ArrayModel, BaseModel
from .coupling import CouplingKind, CouplingSpec
from .grid import Grading, RadialGrid
from .options import (
    BoundaryCondition,
    BoundaryKind,
    FunctionalKind,
    SecondOrderMethod,
    SolverOptions,
    SolverOrder,
)
from .potential import PotentialKind, PotentialSpec
from .problem import CongestionCurve, Domain, ProblemSpec
from .scenario import ScenarioConfig, SweepPoint
from .solution import (
    AdmissibilityReport,
    DecayCheck,
    NoSolution,
    RadialSolution,
    SecondOrderState,
)

__all__ = [
    "AdmissibilityReport",
    "ArrayModel",
    "BaseModel",
    "BoundaryCondition",
    "BoundaryKind",
    "CongestionCurve",
    "CouplingKind",
    "CouplingSpec",
    "DecayCheck",
    "Domain",
    "FunctionalKind",
    "Grading",
    "NoSolution",
    "PotentialKind",
    "PotentialSpec",
    "ProblemSpec",
    "RadialGrid",
    "RadialSolution",
    "ScenarioConfig",
    "SecondOrderMethod",
    "SecondOrderState",
    "SolverOptions",
    "SolverOrder",
    "SweepPoint",
]
