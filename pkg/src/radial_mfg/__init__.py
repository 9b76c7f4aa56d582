"""Radial stationary Mean-Field Games with congestion.

Explicit first-order solutions, variational and Newton second-order
solvers, and a CLI that runs reproducible scenario sweeps.
"""

__version__ = "0.1.0"

from .models.problem import ProblemSpec
from .models.scenario import ScenarioConfig
from .services.first_order import FirstOrderSolver
from .services.second_order import SecondOrderSolver

__all__ = [
    "FirstOrderSolver",
    "ProblemSpec",
    "ScenarioConfig",
    "SecondOrderSolver",
]
