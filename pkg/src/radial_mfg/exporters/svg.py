"""SVG line-plot panels drawn with matplotlib."""

import logging
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence

import matplotlib as mpl
import numpy as np
from matplotlib.figure import Figure

from ..exceptions import ExportError
from ..potentials import eval_potential
from ..services.scenario import PointResult, ScenarioResult
from .base import SolutionExporter

logger = logging.getLogger(__name__)

# Fixed salt and no date stamp keep the SVG bytes reproducible.
PANEL_STYLE = {
    "figure.figsize": (6.0, 4.0),
    "font.size": 9,
    "font.family": "DejaVu Sans",
    "svg.hashsalt": "radial-mfg",
    "svg.fonttype": "path",
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.frameon": False,
}


class PanelKind(str, Enum):
    POTENTIAL = "potential"
    PHI = "phi"
    VALUE = "value"
    DENSITY = "density"


_YLABELS = {
    PanelKind.POTENTIAL: "V(r)",
    PanelKind.PHI: "phi(H)",
    PanelKind.VALUE: "u(r)",
    PanelKind.DENSITY: "m(r)",
}


def _curve(point: PointResult, kind: PanelKind):
    """(x, y) of one point on one panel, or None when the point has no data."""
    if kind == PanelKind.PHI:
        if not point.phi_curve or point.solution is None:
            return None
        samples = np.array(point.phi_curve, dtype=float)
        return samples[:, 0], samples[:, 1]

    if point.solution is not None:
        grid, m, u = point.solution.grid, point.solution.m, point.solution.u
    elif point.state is not None:
        grid, m, u = point.state.grid, point.state.m, point.u
    else:
        return None

    if kind == PanelKind.POTENTIAL:
        return grid.nodes, eval_potential(point.spec.potential, grid.nodes)
    if kind == PanelKind.VALUE:
        return None if u is None else (grid.nodes, u)
    return grid.nodes, m


def emit_svg(
    points: Sequence[PointResult],
    kind: PanelKind,
    path: Path,
    target: Optional[float] = None,
) -> Path:
    """
    Draw one panel with a curve per point.

    Args:
        points: Point results of a sweep
        kind: Panel to draw
        path: Output SVG path
        target: Mass target drawn as a reference line on the phi panel

    Raises:
        ExportError: no point has data for the panel, or the file cannot be
            written. Nothing is written in either case.
    """
    kind = PanelKind(kind)
    curves = [(point, _curve(point, kind)) for point in points]
    curves = [(point, xy) for point, xy in curves if xy is not None]
    if not curves:
        raise ExportError(f"No solutions to draw on the {kind.value} panel")

    with mpl.rc_context(PANEL_STYLE):
        figure = Figure()
        axes = figure.add_subplot(1, 1, 1)
        for point, (x, y) in curves:
            axes.plot(x, y, linewidth=1.2, label=point.label)

        axes.set_xscale("log")
        if kind == PanelKind.PHI:
            axes.set_yscale("log")
            axes.set_xlabel("H")
            if target is not None:
                axes.axhline(target, color="black", linestyle="--", linewidth=0.8)
        else:
            axes.set_xlabel("r")
        if kind == PanelKind.DENSITY:
            axes.set_yscale("log")
        axes.set_ylabel(_YLABELS[kind])
        axes.legend(loc="best")
        figure.tight_layout()

        path = Path(path)
        try:
            figure.savefig(path, format="svg", metadata={"Date": None})
        except OSError as e:
            raise ExportError(f"Cannot write {path}: {e}")

    logger.debug(f"Wrote {kind.value} panel with {len(curves)} curve(s) to {path}")
    return path


class SvgPanelExporter(SolutionExporter):
    """One SVG per panel kind that has data."""

    def __init__(self, output_dir: Path, target: Optional[float] = None):
        super().__init__(output_dir)
        self.target = target

    @property
    def artifact_kind(self) -> str:
        return "svg"

    def export(self, result: ScenarioResult) -> List[Path]:
        written = []
        for kind in PanelKind:
            if not any(_curve(point, kind) is not None for point in result.points):
                logger.info(f"Skipping {kind.value} panel: no data")
                continue
            path = self.output_dir / f"panel_{kind.value}.svg"
            written.append(emit_svg(result.points, kind, path, self.target))
        return written
