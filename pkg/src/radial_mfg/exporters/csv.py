"""CSV export of solutions and diagnostic curves."""

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .. import __version__
from ..exceptions import ExportError
from ..models.solution import NoSolution, RadialSolution, SecondOrderState
from ..services.scenario import PointResult, ScenarioResult
from ..services.second_order import SecondOrderSolver
from ..utils.formatting import format_float
from .base import SolutionExporter

logger = logging.getLogger(__name__)

FIRST_ORDER_COLUMNS = ["r", "m", "u", "hj_residual", "current_dev"]
SECOND_ORDER_COLUMNS = ["r", "rho", "m", "u", "ode_residual"]


def solution_metadata(
    solution: Union[RadialSolution, SecondOrderState],
) -> Dict[str, str]:
    """Key/value metadata written as `#` comment lines above the table."""
    spec = solution.spec
    metadata = {
        "H": repr(float(solution.H)),
        "j": repr(float(spec.j)),
        "alpha": repr(float(spec.alpha)),
        "beta": repr(float(spec.beta)),
        "d": str(spec.d),
        "grid": solution.grid.describe(),
        "potential": json.dumps(spec.potential.dict_for_export(), sort_keys=True),
        "solver_version": __version__,
    }
    if isinstance(solution, SecondOrderState):
        metadata["boundary"] = solution.boundary.describe()
        metadata["method"] = solution.method
    return metadata


def _write_table(
    path: Path, frame: pd.DataFrame, metadata: Optional[Dict[str, str]] = None
) -> Path:
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            for key, value in (metadata or {}).items():
                handle.write(f"# {key}: {value}\n")
            frame.to_csv(
                handle, index=False, float_format=format_float, lineterminator="\n"
            )
    except OSError as e:
        raise ExportError(f"Cannot write {path}: {e}")
    logger.debug(f"Wrote {len(frame)} rows to {path}")
    return path


def emit_csv(
    solution: Union[RadialSolution, SecondOrderState],
    path: Path,
    u: Optional[np.ndarray] = None,
    residual: Optional[np.ndarray] = None,
) -> Path:
    """
    Write one solution as CSV, one row per grid node.

    First-order solutions carry every column themselves. For second-order
    states, u and the node residuals are recomputed unless given.

    Raises:
        ExportError: the file cannot be written
    """
    r = solution.grid.nodes
    if isinstance(solution, RadialSolution):
        frame = pd.DataFrame(
            {
                "r": r,
                "m": solution.m,
                "u": solution.u,
                "hj_residual": solution.hj_residual,
                "current_dev": solution.current_deviation,
            },
            columns=FIRST_ORDER_COLUMNS,
        )
    else:
        if u is None or residual is None:
            solver = SecondOrderSolver(solution.spec)
            u = solver.reconstruct_u(solution) if u is None else u
            residual = solver.node_residuals(solution) if residual is None else residual
        frame = pd.DataFrame(
            {
                "r": r,
                "rho": solution.rho,
                "m": solution.m,
                "u": u,
                "ode_residual": residual,
            },
            columns=SECOND_ORDER_COLUMNS,
        )
    return _write_table(path, frame, solution_metadata(solution))


def emit_phi_csv(
    rows: Sequence[Tuple[str, float, float, float]], path: Path
) -> Path:
    """Write (label, alpha, H, phi) samples."""
    frame = pd.DataFrame(list(rows), columns=["label", "alpha", "H", "phi"])
    return _write_table(path, frame)


def emit_mass_curve_csv(no_solution: NoSolution, path: Path) -> Path:
    """Write the mass-versus-H samples behind a nonexistence verdict."""
    frame = pd.DataFrame(no_solution.curve, columns=["H", "mass"])
    metadata = {
        "reason": no_solution.reason,
        "j": repr(float(no_solution.j)),
        "target": repr(float(no_solution.target)),
        "solver_version": __version__,
    }
    if no_solution.critical_H is not None:
        metadata["critical_H"] = repr(float(no_solution.critical_H))
    if no_solution.boundary_mass is not None:
        metadata["boundary_mass"] = repr(float(no_solution.boundary_mass))
    return _write_table(path, frame, metadata)


class CsvExporter(SolutionExporter):
    """Per-point solution tables plus the sweep's phi curve."""

    @property
    def artifact_kind(self) -> str:
        return "csv"

    def _point(self, point: PointResult) -> Optional[Path]:
        path = self.output_dir / f"{point.label}.csv"
        if point.solution is not None:
            return emit_csv(point.solution, path)
        if point.state is not None:
            return emit_csv(point.state, path, point.u, point.node_residuals)
        if point.no_solution is not None and point.no_solution.curve:
            return emit_mass_curve_csv(
                point.no_solution, self.output_dir / f"{point.label}_mass_curve.csv"
            )
        return None

    def export(self, result: ScenarioResult) -> List[Path]:
        written = []
        for point in result.points:
            path = self._point(point)
            if path is not None:
                written.append(path)

        rows = [
            (point.label, point.spec.alpha, H, phi)
            for point in result.points
            if point.solution is not None
            for H, phi in point.phi_curve
        ]
        if rows:
            written.append(emit_phi_csv(rows, self.output_dir / "phi_curve.csv"))
        return written
