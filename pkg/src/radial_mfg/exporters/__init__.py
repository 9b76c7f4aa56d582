"""Artifact exporters."""

from .base import SolutionExporter
from .csv import CsvExporter, emit_csv, emit_mass_curve_csv, emit_phi_csv
from .report import ReportExporter, build_report
from .svg import PanelKind, SvgPanelExporter, emit_svg

__all__ = [
    "CsvExporter",
    "PanelKind",
    "ReportExporter",
    "SolutionExporter",
    "SvgPanelExporter",
    "build_report",
    "emit_csv",
    "emit_mass_curve_csv",
    "emit_phi_csv",
    "emit_svg",
]
