"""Scenario loading and sweep orchestration."""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from enum import IntEnum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import yaml
from pydantic import Field, ValidationError

from ..config import Settings, get_settings
from ..core import check_admissibility
from ..exceptions import (
    ConfigError,
    ConvergenceError,
    DomainError,
    NumericalError,
    TargetUnattainableError,
)
from ..models.base import ArrayModel
from ..models.grid import RadialGrid
from ..models.options import SolverOrder
from ..models.problem import ProblemSpec
from ..models.scenario import GridSection, ScenarioConfig, SweepPoint
from ..models.solution import (
    AdmissibilityReport,
    NoSolution,
    RadialSolution,
    SecondOrderState,
)
from ..numerics import build_grid
from .first_order import FirstOrderSolver
from .second_order import SecondOrderSolver

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """Process exit status; larger values are more severe."""

    SUCCESS = 0
    CONFIG_ERROR = 2
    NONEXISTENCE = 3
    NUMERICAL_FAILURE = 4


def _validation_messages(error: ValidationError) -> List[str]:
    return [
        f"{'.'.join(str(part) for part in item['loc']) or '<root>'}: {item['msg']}"
        for item in error.errors()
    ]


def load_scenario(path: Union[str, Path]) -> ScenarioConfig:
    """
    Read and validate a scenario document.

    JSON is the primary syntax; .yaml and .yml files are parsed as YAML.

    Raises:
        ConfigError: unreadable file, syntax error or schema violation
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read scenario {path}: {e}")

    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            document = yaml.safe_load(text)
        else:
            document = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigError(f"Cannot parse scenario {path}: {e}")

    if not isinstance(document, dict):
        raise ConfigError(f"Scenario {path} must be a mapping at the top level")

    try:
        return ScenarioConfig.model_validate(document)
    except ValidationError as e:
        messages = _validation_messages(e)
        raise ConfigError(
            f"Invalid scenario {path}: {'; '.join(messages)}",
            {"errors": messages},
        )


class PointResult(ArrayModel):
    """Outcome of one sweep point."""

    point: SweepPoint
    spec: ProblemSpec
    order: SolverOrder
    solution: Optional[RadialSolution] = None
    state: Optional[SecondOrderState] = None
    u: Optional[np.ndarray] = None
    node_residuals: Optional[np.ndarray] = None
    no_solution: Optional[NoSolution] = None
    phi_curve: List[Tuple[float, float]] = Field(default_factory=list)
    error: Optional[str] = None
    exit_code: ExitCode = ExitCode.SUCCESS

    @property
    def label(self) -> str:
        return self.point.label

    @property
    def H(self) -> Optional[float]:
        if self.solution is not None:
            return self.solution.H
        if self.state is not None:
            return self.state.H
        return None

    @property
    def solved(self) -> bool:
        return self.solution is not None or self.state is not None


class ScenarioResult(ArrayModel):
    """All point outcomes of a scenario, in sweep order."""

    config: ScenarioConfig
    grid: RadialGrid
    points: List[PointResult]

    @property
    def exit_code(self) -> ExitCode:
        return max((p.exit_code for p in self.points), default=ExitCode.SUCCESS)


class ScenarioRunner:
    """Solves every point of a scenario, concurrently up to `settings.threads`."""

    def __init__(
        self,
        config: ScenarioConfig,
        settings: Optional[Settings] = None,
        grid_n: Optional[int] = None,
        r_max: Optional[float] = None,
    ):
        """
        Initialize the runner.

        Args:
            config: Validated scenario
            settings: Process settings; read from the environment when omitted
            grid_n: Override of the node count
            r_max: Override of the truncation radius
        """
        self.config = config
        self.settings = settings or get_settings()

        updates = {}
        if grid_n is not None:
            updates["n"] = grid_n
        if r_max is not None:
            updates["r_max"] = r_max
        try:
            self.grid_section = GridSection.model_validate(
                {**config.grid.model_dump(), **updates}
            )
        except ValidationError as e:
            raise ConfigError(
                f"Invalid grid override: {'; '.join(_validation_messages(e))}"
            )

    def build_grid(self) -> RadialGrid:
        section = self.grid_section
        return build_grid(section.r_min, section.r_max, section.n, section.grading)

    def solve_point(self, point: SweepPoint, grid: RadialGrid) -> PointResult:
        """Solve one point, turning solver failures into exit codes."""
        spec = self.config.problem_for(point)
        options = self.config.solver
        base = {"point": point, "spec": spec, "order": options.order}
        logger.info(f"Solving {point.label} ({options.order} order)")

        try:
            if options.order == SolverOrder.FIRST:
                return self._first_order(base, spec, grid)
            return self._second_order(base, spec, grid)
        except TargetUnattainableError as e:
            logger.warning(f"{point.label}: {e.message}")
            return PointResult(
                **base, error=e.message, exit_code=ExitCode.NONEXISTENCE
            )
        except DomainError as e:
            logger.error(f"{point.label}: {e.message}")
            return PointResult(
                **base, error=e.message, exit_code=ExitCode.CONFIG_ERROR
            )
        except NumericalError as e:
            logger.error(f"{point.label}: {e.message}")
            state = e.best_state if isinstance(e, ConvergenceError) else None
            return PointResult(
                **base,
                state=state,
                error=e.message,
                exit_code=ExitCode.NUMERICAL_FAILURE,
            )

    def _first_order(self, base, spec: ProblemSpec, grid: RadialGrid) -> PointResult:
        options = self.config.solver
        solver = FirstOrderSolver(spec, options)
        result = solver.solve(grid)
        if isinstance(result, NoSolution):
            return PointResult(
                **base,
                no_solution=result,
                phi_curve=result.curve,
                error=result.reason,
                exit_code=ExitCode.NONEXISTENCE,
            )

        curve: List[Tuple[float, float]] = []
        if spec.j != 0.0:
            h_values = np.geomspace(
                options.phi_h_min, options.phi_h_max, options.phi_samples
            )
            curve = solver.phi_curve(h_values, grid)
        return PointResult(**base, solution=result, u=result.u, phi_curve=curve)

    def _second_order(self, base, spec: ProblemSpec, grid: RadialGrid) -> PointResult:
        solver = SecondOrderSolver(spec, self.config.solver)
        state = solver.solve(grid)
        exit_code, error = ExitCode.SUCCESS, None
        if not state.converged:
            exit_code = ExitCode.NUMERICAL_FAILURE
            error = "second-order solve did not reach its tolerances"
        return PointResult(
            **base,
            state=state,
            u=solver.reconstruct_u(state),
            node_residuals=solver.node_residuals(state),
            error=error,
            exit_code=exit_code,
        )

    def run(self) -> ScenarioResult:
        """Solve all points; results keep sweep order whatever the thread count."""
        grid = self.build_grid()
        points = self.config.points()
        workers = max(1, min(self.settings.threads, len(points)))
        logger.info(
            f"Running {self.config.name}: {len(points)} points on "
            f"{grid.describe()} with {workers} worker(s)"
        )
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: self.solve_point(p, grid), points))
        return ScenarioResult(config=self.config, grid=grid, points=results)

    def phi_samples(
        self, h_values: Sequence[float]
    ) -> List[Tuple[SweepPoint, List[Tuple[float, float]]]]:
        """phi(H) at the given H for every point with a nonzero current."""
        grid = self.build_grid()
        samples = []
        for point in self.config.points():
            spec = self.config.problem_for(point)
            if spec.j == 0.0:
                logger.warning(f"{point.label}: phi is only defined for j != 0")
                continue
            solver = FirstOrderSolver(spec, self.config.solver)
            samples.append((point, solver.phi_curve(h_values, grid)))
        return samples

    def check(self) -> List[Tuple[SweepPoint, AdmissibilityReport]]:
        """Admissibility report for every point."""
        reports = []
        for point in self.config.points():
            spec = self.config.problem_for(point)
            reports.append((point, check_admissibility(spec, self.config.solver)))
        return reports
