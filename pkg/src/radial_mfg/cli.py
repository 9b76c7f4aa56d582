"""Command-line interface for radial-mfg."""

import logging
import sys
from pathlib import Path
from typing import List, NoReturn, Optional

import click
import numpy as np
import structlog
from rich.console import Console
from rich.table import Table

from . import __version__
from .config import Settings, ensure_output_directory, get_settings
from .core import unit_sphere_area
from .exceptions import ConfigError, ExportError, RadialMFGError
from .exporters import (
    CsvExporter,
    ReportExporter,
    SolutionExporter,
    SvgPanelExporter,
    emit_phi_csv,
)
from .services.scenario import (
    ExitCode,
    ScenarioResult,
    ScenarioRunner,
    load_scenario,
)
from .utils.formatting import format_H, format_norm, truncate_string

console = Console()
logger = logging.getLogger(__name__)

EXPORT_FAILURE = 1


def setup_logging(level: str = "INFO", fmt: str = "console"):
    """Route stdlib logging to stderr through a structlog formatter."""
    if fmt == "json":
        renderer = structlog.processors.JSONRenderer(sort_keys=True)
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=False)

    formatter = structlog.stdlib.ProcessorFormatter(
        processor=renderer,
        foreign_pre_chain=[
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.processors.TimeStamper(fmt="iso"),
        ],
    )
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)

    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(getattr(logging, level.upper(), logging.INFO))


def _fail(message: str, code: int) -> NoReturn:
    console.print(f"❌ {message}", style="bold red")
    sys.exit(int(code))


def _load_runner(
    config_path: Path,
    settings: Settings,
    grid_n: Optional[int] = None,
    r_max: Optional[float] = None,
) -> ScenarioRunner:
    try:
        config = load_scenario(config_path)
        return ScenarioRunner(config, settings, grid_n=grid_n, r_max=r_max)
    except ConfigError as e:
        _fail(e.message, ExitCode.CONFIG_ERROR)


def _mass_target(runner: ScenarioRunner) -> float:
    options = runner.config.solver
    if options.target_mass is not None:
        return options.target_mass
    return 1.0 / unit_sphere_area(runner.config.problem.d)


def _summary_table(result: ScenarioResult) -> Table:
    table = Table(title=f"{result.config.name} ({result.grid.describe()})")
    table.add_column("Point", style="cyan")
    table.add_column("H", style="green", justify="right")
    table.add_column("Residual", justify="right")
    table.add_column("Mass error", justify="right")
    table.add_column("Status", style="magenta")
    table.add_column("Notes", style="yellow")

    for point in result.points:
        residual = mass_error = None
        notes = point.error or ""
        if point.solution is not None:
            residual = point.solution.max_hj_residual
            mass_error = point.solution.mass_error
            notes = "; ".join(point.solution.warnings)
        elif point.state is not None:
            residual = point.state.residual_norm
            mass_error = point.state.mass_error
        if point.no_solution is not None and point.no_solution.boundary_mass:
            notes = (
                f"boundary mass {point.no_solution.boundary_mass:.6f} "
                f"vs target {point.no_solution.target:.6f}"
            )
        table.add_row(
            point.label,
            format_H(point.H),
            format_norm(residual),
            format_norm(mass_error),
            ExitCode(point.exit_code).name.lower(),
            truncate_string(notes),
        )
    return table


@click.group()
@click.version_option(__version__, prog_name="radial-mfg")
@click.option("--debug", is_flag=True, help="Enable debug logging")
@click.pass_context
def main(ctx, debug):
    """Radial stationary Mean-Field Games with congestion."""
    ctx.ensure_object(dict)

    settings = get_settings()
    log_level = "DEBUG" if debug or settings.debug else settings.log_level
    setup_logging(log_level, settings.log_format)
    ctx.obj["settings"] = settings


@main.command()
@click.argument("config_path", type=click.Path(dir_okay=False, path_type=Path))
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False, path_type=Path),
    help="Output directory (default: scenario output.directory or data dir)",
)
@click.option("--no-svg", is_flag=True, help="Skip SVG panels")
@click.option("--grid-n", type=int, help="Override the number of grid nodes")
@click.option("--rmax", "r_max", type=float, help="Override the truncation radius")
@click.pass_context
def run(
    ctx,
    config_path: Path,
    out_dir: Optional[Path],
    no_svg: bool,
    grid_n: Optional[int],
    r_max: Optional[float],
):
    """Solve every sweep point of a scenario and write its artifacts."""
    settings = ctx.obj["settings"]
    runner = _load_runner(config_path, settings, grid_n, r_max)
    config = runner.config

    with console.status(f"[bold green]Solving {config.name}..."):
        result = runner.run()
    console.print(_summary_table(result))

    try:
        output_dir = ensure_output_directory(
            out_dir or config.output.directory, settings
        )
    except OSError as e:
        _fail(f"Cannot create output directory: {e}", EXPORT_FAILURE)
    exporters: List[SolutionExporter] = []
    if config.output.emit_csv:
        exporters.append(CsvExporter(output_dir))
    if config.output.emit_svg and not no_svg:
        exporters.append(SvgPanelExporter(output_dir, target=_mass_target(runner)))
    if config.output.emit_report:
        exporters.append(ReportExporter(output_dir))

    written = []
    try:
        for exporter in exporters:
            written.extend(exporter.export(result))
    except ExportError as e:
        _fail(f"Export failed: {e.message}", EXPORT_FAILURE)

    console.print(f"📁 Wrote {len(written)} file(s) to {output_dir}")
    code = result.exit_code
    if code == ExitCode.SUCCESS:
        console.print("✅ All points solved", style="bold green")
        return
    if code == ExitCode.NONEXISTENCE:
        console.print("⚠️  No solution exists for some points", style="bold yellow")
    elif code == ExitCode.CONFIG_ERROR:
        console.print("❌ Some points have invalid parameters", style="bold red")
    else:
        console.print("❌ Some points failed numerically", style="bold red")
    sys.exit(int(code))


@main.command()
@click.argument("config_path", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--h-min", type=float, help="Smallest H sampled")
@click.option("--h-max", type=float, help="Largest H sampled")
@click.option("--samples", type=int, help="Number of geometric samples")
@click.option(
    "--out",
    "out_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the samples as CSV instead of printing them",
)
@click.pass_context
def phi(
    ctx,
    config_path: Path,
    h_min: Optional[float],
    h_max: Optional[float],
    samples: Optional[int],
    out_path: Optional[Path],
):
    """Sample the mass function phi(H) for every sweep point."""
    runner = _load_runner(config_path, ctx.obj["settings"])
    options = runner.config.solver
    h_min = options.phi_h_min if h_min is None else h_min
    h_max = options.phi_h_max if h_max is None else h_max
    samples = options.phi_samples if samples is None else samples
    if not 0.0 < h_min < h_max or samples < 2:
        _fail(
            "Need 0 < --h-min < --h-max and at least two samples",
            ExitCode.CONFIG_ERROR,
        )

    h_values = np.geomspace(h_min, h_max, samples)
    try:
        with console.status("[bold green]Sampling phi..."):
            curves = runner.phi_samples(h_values)
    except RadialMFGError as e:
        _fail(f"phi sampling failed: {e.message}", ExitCode.NUMERICAL_FAILURE)

    if not curves:
        _fail("phi is only defined for a nonzero current", ExitCode.CONFIG_ERROR)

    rows = [
        (point.label, point.alpha, H, value)
        for point, curve in curves
        for H, value in curve
    ]
    if out_path is not None:
        try:
            emit_phi_csv(rows, out_path)
        except ExportError as e:
            _fail(f"Export failed: {e.message}", EXPORT_FAILURE)
        console.print(f"✅ Wrote {len(rows)} samples to {out_path}", style="green")
        return

    table = Table(title=f"phi(H), target {_mass_target(runner):.6f}")
    table.add_column("Point", style="cyan")
    table.add_column("H", style="green", justify="right")
    table.add_column("phi", justify="right")
    for label, _, H, value in rows:
        table.add_row(label, f"{H:.6g}", f"{value:.6g}")
    console.print(table)


@main.command()
@click.argument("config_path", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_context
def check(ctx, config_path: Path):
    """Report admissibility of every sweep point without solving."""
    runner = _load_runner(config_path, ctx.obj["settings"])

    table = Table(title=f"Admissibility: {runner.config.name}")
    table.add_column("Point", style="cyan")
    table.add_column("sigma", justify="right")
    table.add_column("Window", justify="right")
    table.add_column("Decay r->0", justify="right")
    table.add_column("Decay r->inf", justify="right")
    table.add_column("Current", justify="center")
    table.add_column("Admissible", style="magenta", justify="center")

    try:
        reports = runner.check()
    except RadialMFGError as e:
        _fail(f"Admissibility check failed: {e.message}", ExitCode.CONFIG_ERROR)

    warnings = []
    for point, report in reports:
        table.add_row(
            point.label,
            f"{report.sigma:.4f}",
            f"[{report.window_lower:.3f}, {report.window_upper:.3f}] "
            f"{'✓' if report.exponent_window else '✗'}",
            f"{report.decay_origin.outermost:.2e} "
            f"{'✓' if report.decay_origin.decays else '✗'}",
            f"{report.decay_infinity.outermost:.2e} "
            f"{'✓' if report.decay_infinity.decays else '✗'}",
            "✓" if report.current_compatible else "✗",
            "yes" if report.admissible else "no",
        )
        warnings.extend(f"{point.label}: {w}" for w in report.warnings)

    console.print(table)
    for warning in warnings:
        console.print(f"⚠️  {warning}", style="yellow")


if __name__ == "__main__":
    main()
