"""JSON summary report of a scenario run."""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

from .. import __version__
from ..exceptions import ExportError
from ..services.scenario import ExitCode, PointResult, ScenarioResult
from ..utils.validation import validate_first_order, validate_second_order
from .base import SolutionExporter

logger = logging.getLogger(__name__)


def _finite(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return float(value)


def point_summary(point: PointResult, result: ScenarioResult) -> Dict[str, Any]:
    """Report entry of one sweep point."""
    options = result.config.solver
    entry: Dict[str, Any] = {
        "label": point.label,
        "alpha": point.spec.alpha,
        "frequency": point.point.frequency,
        "status": ExitCode(point.exit_code).name.lower(),
        "exit_code": int(point.exit_code),
        "H": _finite(point.H),
        "error": point.error,
    }

    if point.solution is not None:
        solution = point.solution
        ok, errors = validate_first_order(solution, options)
        entry.update(
            {
                "hj_residual": _finite(solution.max_hj_residual),
                "current_deviation": _finite(solution.max_current_deviation),
                "mass_error": _finite(solution.mass_error),
                "truncation_shift": _finite(solution.truncation_shift),
                "warnings": list(solution.warnings),
                "valid": ok,
                "validation_errors": errors,
            }
        )
    elif point.state is not None:
        state = point.state
        ok, errors = validate_second_order(state, options)
        entry.update(
            {
                "method": state.method,
                "boundary": state.boundary.describe(),
                "iterations": state.iterations,
                "residual_norm": _finite(state.residual_norm),
                "gradient_norm": _finite(state.gradient_norm),
                "functional_value": _finite(state.functional_value),
                "mass_error": _finite(state.mass_error),
                "valid": ok,
                "validation_errors": errors,
            }
        )

    if point.no_solution is not None:
        entry["nonexistence"] = {
            "reason": point.no_solution.reason,
            "target": point.no_solution.target,
            "critical_H": _finite(point.no_solution.critical_H),
            "boundary_mass": _finite(point.no_solution.boundary_mass),
        }
    return entry


def build_report(result: ScenarioResult) -> Dict[str, Any]:
    """JSON-compatible summary of a scenario run."""
    return {
        "scenario": result.config.name,
        "description": result.config.description,
        "solver_version": __version__,
        "order": result.config.solver.order,
        "grid": result.grid.describe(),
        "exit_code": int(result.exit_code),
        "points": [point_summary(point, result) for point in result.points],
    }


class ReportExporter(SolutionExporter):
    """Writes report.json."""

    @property
    def artifact_kind(self) -> str:
        return "report"

    def export(self, result: ScenarioResult) -> List[Path]:
        path = self.output_dir / "report.json"
        try:
            path.write_text(
                json.dumps(build_report(result), indent=2) + "\n", encoding="utf-8"
            )
        except OSError as e:
            raise ExportError(f"Cannot write {path}: {e}")
        logger.info(f"Wrote report for {len(result.points)} point(s) to {path}")
        return [path]
