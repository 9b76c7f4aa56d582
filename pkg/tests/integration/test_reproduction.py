"""Reproduction runs on the bundled scenarios."""

import math

import numpy as np
import pytest

from radial_mfg.config import Settings
from radial_mfg.numerics import build_grid
from radial_mfg.services.first_order import FirstOrderSolver
from radial_mfg.services.scenario import ExitCode, ScenarioRunner, load_scenario
from radial_mfg.utils.validation import HJ_TOLERANCE
from tests.conftest import CONFIG_DIR

pytestmark = [pytest.mark.slow, pytest.mark.integration]

REFERENCE_H = {
    "gaussian_sine": [13.48, 15.99, 25.05, 62.26],
    "power_sine": [13.47, 15.95, 25.0, 62.20],
}


def _run(name, tmp_path):
    config = load_scenario(CONFIG_DIR / f"{name}.json")
    return ScenarioRunner(config, Settings(threads=2, data_dir=tmp_path)).run()


@pytest.mark.parametrize("family", sorted(REFERENCE_H))
def test_reference_H(family, tmp_path):
    """One frequency reading reproduces the whole H table within 0.5%."""
    matches = {}
    for reading in ("w1", "w2"):
        result = _run(f"{family}_{reading}", tmp_path)
        assert result.exit_code == ExitCode.SUCCESS
        solved = [point.H for point in result.points]
        matches[reading] = all(
            abs(H - expected) <= 0.005 * expected
            for H, expected in zip(solved, REFERENCE_H[family])
        )
        for point in result.points:
            assert point.solution.max_hj_residual <= HJ_TOLERANCE
            assert point.solution.mass_error <= 1e-6
    assert any(matches.values()), matches


def test_gaussian_nonexistence(tmp_path):
    """The zero-current Gaussian scenario has no admissible H."""
    result = _run("gaussian_nonexistence", tmp_path)
    assert result.exit_code == ExitCode.NONEXISTENCE
    no_solution = result.points[0].no_solution
    assert no_solution.boundary_mass == pytest.approx(1.0, abs=1e-4)
    assert no_solution.target == pytest.approx(1.0 / (2.0 * math.pi))


def test_phi_decreasing(tmp_path):
    """phi decreases strictly over (0, 200] on the production grid."""
    config = load_scenario(CONFIG_DIR / "gaussian_sine_w2.json")
    runner = ScenarioRunner(config, Settings(threads=1, data_dir=tmp_path))
    _, curve = runner.phi_samples(np.geomspace(0.01, 200.0, 50))[0]
    values = np.array([phi for _, phi in curve])
    assert np.all(np.diff(values) < 0.0)
    assert values[0] > 10.0 * values[-1]


def test_current_conservation_order(gaussian_sine_spec, fast_options):
    """The current deviation is below 1e-3 and shrinks at second order."""
    solver = FirstOrderSolver(gaussian_sine_spec, fast_options)
    coarse = solver.solve(build_grid(1e-4, 100.0, 5000))
    fine = solver.solve(build_grid(1e-4, 100.0, 10000))
    assert coarse.max_current_deviation <= 1e-3
    assert coarse.max_current_deviation / fine.max_current_deviation > 3.0


def test_second_order_scenario(tmp_path):
    """The bundled alpha = 0 scenario converges variationally."""
    result = _run("second_order_alpha0", tmp_path)
    assert result.exit_code == ExitCode.SUCCESS
    state = result.points[0].state
    assert state.converged
    assert state.mass_error <= 1e-6


def test_second_order_fine_grid(tmp_path):
    """On 2000 nodes the variational solution meets residual and mass targets."""
    config = load_scenario(CONFIG_DIR / "second_order_alpha0.json")
    runner = ScenarioRunner(
        config, Settings(threads=1, data_dir=tmp_path), grid_n=2000
    )
    result = runner.run()
    assert result.exit_code == ExitCode.SUCCESS
    state = result.points[0].state
    assert state.grid.size == 2000
    assert state.residual_norm <= 1e-4
    assert state.mass_error <= 1e-6


def test_H_grid_refinement(gaussian_sine_spec, fast_options, record_property):
    """H settles at second order as the composite grid is refined."""
    solver = FirstOrderSolver(gaussian_sine_spec, fast_options)
    values = [solver.solve_H(build_grid(1e-4, 100.0, n)) for n in (1000, 2000, 4000)]
    gaps = np.abs(np.diff(values))
    ratio = gaps[0] / gaps[1]
    record_property("H_values", values)
    record_property("H_refinement_order", float(np.log2(ratio)))
    assert ratio > 3.0, values
