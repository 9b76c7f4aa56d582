"""Tests for the command-line interface."""

import pandas as pd
import pytest
from click.testing import CliRunner

from radial_mfg import __version__
from radial_mfg.cli import main
from radial_mfg.exceptions import ExportError


@pytest.fixture
def cli_runner():
    """Create a CLI runner."""
    return CliRunner()


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Keep default outputs and settings inside the test directory."""
    monkeypatch.setenv("RADIAL_MFG_DATA_DIR", str(tmp_path / "data"))
    monkeypatch.setenv("RADIAL_MFG_THREADS", "1")
    monkeypatch.delenv("RADIAL_MFG_DEBUG", raising=False)


class TestMain:
    """Test the command group."""

    def test_version(self, cli_runner):
        """--version prints the package version."""
        result = cli_runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_help_lists_commands(self, cli_runner):
        """run, phi and check are available."""
        result = cli_runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        for command in ("run", "phi", "check"):
            assert command in result.output


class TestRunCommand:
    """Test the run command."""

    def test_small_sweep(self, cli_runner, write_scenario, scenario_document, tmp_path):
        """A solvable sweep exits 0 and writes CSV and the report."""
        out = tmp_path / "out"
        path = str(write_scenario(scenario_document))
        result = cli_runner.invoke(main, ["run", path, "--out", str(out), "--no-svg"])
        assert result.exit_code == 0, result.output
        assert "All points solved" in result.output
        assert (out / "alpha_1.3.csv").exists()
        assert (out / "report.json").exists()
        assert not list(out.glob("*.svg"))

    def test_default_output_directory(
        self, cli_runner, write_scenario, scenario_document, tmp_path
    ):
        """Without --out, files go to the data directory."""
        result = cli_runner.invoke(
            main, ["run", str(write_scenario(scenario_document)), "--no-svg"]
        )
        assert result.exit_code == 0, result.output
        assert (tmp_path / "data" / "results" / "report.json").exists()

    def test_deterministic_csv(
        self, cli_runner, write_scenario, scenario_document, tmp_path
    ):
        """Two runs of one scenario write identical CSV bytes."""
        path = str(write_scenario(scenario_document))
        for name in ("first", "second"):
            result = cli_runner.invoke(
                main, ["run", path, "--no-svg", "--out", str(tmp_path / name)]
            )
            assert result.exit_code == 0, result.output
        first = (tmp_path / "first" / "alpha_1.4.csv").read_bytes()
        second = (tmp_path / "second" / "alpha_1.4.csv").read_bytes()
        assert first == second

    def test_nonexistence(
        self, cli_runner, write_scenario, nonexistence_document, tmp_path
    ):
        """No admissible H exits with code 3 and keeps the mass curve."""
        out = tmp_path / "out"
        path = str(write_scenario(nonexistence_document))
        result = cli_runner.invoke(main, ["run", path, "--out", str(out)])
        assert result.exit_code == 3
        assert "No solution exists" in result.output
        assert (out / "alpha_1.3_mass_curve.csv").exists()

    def test_invalid_config(self, cli_runner, write_scenario, scenario_document):
        """Schema violations exit with code 2."""
        scenario_document["solver"]["order"] = "third"
        path = str(write_scenario(scenario_document))
        result = cli_runner.invoke(main, ["run", path])
        assert result.exit_code == 2
        assert "Invalid scenario" in result.output

    def test_missing_config(self, cli_runner, tmp_path):
        """A missing scenario file exits with code 2."""
        result = cli_runner.invoke(main, ["run", str(tmp_path / "missing.json")])
        assert result.exit_code == 2

    def test_bad_grid_override(self, cli_runner, write_scenario, scenario_document):
        """--grid-n below two nodes is a configuration error."""
        path = str(write_scenario(scenario_document))
        result = cli_runner.invoke(main, ["run", path, "--grid-n", "1"])
        assert result.exit_code == 2
        assert "grid override" in result.output

    def test_export_failure(
        self, cli_runner, write_scenario, scenario_document, tmp_path, mocker
    ):
        """Write errors exit with code 1."""
        mocker.patch(
            "radial_mfg.cli.CsvExporter.export",
            side_effect=ExportError("disk full"),
        )
        result = cli_runner.invoke(
            main,
            ["run", str(write_scenario(scenario_document)), "--out", str(tmp_path)],
        )
        assert result.exit_code == 1
        assert "disk full" in result.output


class TestPhiCommand:
    """Test the phi command."""

    def test_table(self, cli_runner, write_scenario, scenario_document):
        """Samples are printed as a table by default."""
        path = str(write_scenario(scenario_document))
        result = cli_runner.invoke(main, ["phi", path, "--samples", "3"])
        assert result.exit_code == 0, result.output
        assert "phi(H)" in result.output
        assert "alpha_1.4" in result.output

    def test_csv(self, cli_runner, write_scenario, scenario_document, tmp_path):
        """--out writes one row per point and sample."""
        out = tmp_path / "phi.csv"
        result = cli_runner.invoke(
            main,
            [
                "phi",
                str(write_scenario(scenario_document)),
                "--h-min",
                "1",
                "--h-max",
                "100",
                "--samples",
                "4",
                "--out",
                str(out),
            ],
        )
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(out)
        assert len(frame) == 8
        assert frame["H"].iloc[0] == 1.0
        assert frame["H"].iloc[3] == pytest.approx(100.0)

    def test_invalid_range(self, cli_runner, write_scenario, scenario_document):
        """--h-min must lie below --h-max."""
        path = str(write_scenario(scenario_document))
        result = cli_runner.invoke(main, ["phi", path, "--h-min", "5", "--h-max", "1"])
        assert result.exit_code == 2

    def test_zero_current(self, cli_runner, write_scenario, nonexistence_document):
        """phi needs a nonzero current."""
        path = str(write_scenario(nonexistence_document))
        result = cli_runner.invoke(main, ["phi", path])
        assert result.exit_code == 2
        assert "nonzero current" in result.output


class TestCheckCommand:
    """Test the check command."""

    def test_admissible(self, cli_runner, write_scenario, scenario_document):
        """The reference sweep is admissible."""
        result = cli_runner.invoke(
            main, ["check", str(write_scenario(scenario_document))]
        )
        assert result.exit_code == 0, result.output
        assert "Admissibility" in result.output
        assert "yes" in result.output

    def test_window_warning(self, cli_runner, write_scenario, scenario_document):
        """Exponents outside the window are flagged."""
        scenario_document["sweep"] = {"alpha": [0.5]}
        result = cli_runner.invoke(
            main, ["check", str(write_scenario(scenario_document))]
        )
        assert result.exit_code == 0
        assert "exponent window" in result.output
