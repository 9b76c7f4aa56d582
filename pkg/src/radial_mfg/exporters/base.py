"""Base classes for artifact exporters."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import List

from ..services.scenario import ScenarioResult


class SolutionExporter(ABC):
    """Abstract base class for scenario artifact writers."""

    def __init__(self, output_dir: Path):
        """
        Initialize with the directory artifacts are written to.

        Args:
            output_dir: Existing output directory
        """
        self.output_dir = Path(output_dir)

    @property
    @abstractmethod
    def artifact_kind(self) -> str:
        """
        Return the artifact kind.

        Returns:
            One of: 'csv', 'svg', 'report'
        """
        pass

    @abstractmethod
    def export(self, result: ScenarioResult) -> List[Path]:
        """
        Write the artifacts of a scenario run.

        Args:
            result: Solved scenario

        Returns:
            Paths of the files written, in write order
        """
        pass
