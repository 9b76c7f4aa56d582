"""Pytest configuration and fixtures."""

import json
from pathlib import Path

import numpy as np
import pytest

from radial_mfg.models.options import SolverOptions
from radial_mfg.models.potential import PotentialSpec
from radial_mfg.models.problem import ProblemSpec
from radial_mfg.numerics import build_grid

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


@pytest.fixture
def gaussian_sine_spec():
    """d=2, beta=1, j=1 with the Gaussian-sine potential (w=2)."""
    return ProblemSpec(
        d=2, alpha=1.3, beta=1.0, j=1.0, potential=PotentialSpec.gaussian_sine(2.0)
    )


@pytest.fixture
def small_grid():
    """Composite grid cheap enough for unit tests."""
    return build_grid(1e-3, 30.0, 600)


@pytest.fixture
def fast_options():
    """Default options without the doubled-domain truncation solve."""
    return SolverOptions(check_truncation=False)


@pytest.fixture
def alpha0_spec():
    """Second-order problem with alpha=0 and a nonzero current."""
    return ProblemSpec(
        d=2, alpha=0.0, beta=1.0, j=1.0, potential=PotentialSpec.gaussian_sine(2.0)
    )


@pytest.fixture
def alpha0_grid():
    """Uniform grid on which variational and Newton systems coincide."""
    return build_grid(0.5, 5.0, 181, "uniform")


@pytest.fixture
def rng():
    """Seeded generator for property tests."""
    return np.random.default_rng(20240611)


@pytest.fixture
def scenario_document():
    """Small first-order sweep used by service, exporter and CLI tests."""
    return {
        "name": "unit_sweep",
        "problem": {"d": 2, "beta": 1.0, "j": 1.0},
        "potential": {"kind": "gaussian_sine", "amplitude": 1.0, "frequency": 2.0},
        "grid": {"r_min": 0.001, "r_max": 30.0, "n": 400},
        "solver": {"order": "first", "check_truncation": False, "phi_samples": 6},
        "sweep": {"alpha": [1.3, 1.4]},
    }


@pytest.fixture
def nonexistence_document():
    """j = 0 on the full plane with a Gaussian potential."""
    return {
        "name": "nonexistence",
        "problem": {
            "d": 2,
            "alpha": 1.3,
            "beta": 1.0,
            "j": 0.0,
            "domain": "full_space",
        },
        "potential": {"kind": "gaussian", "amplitude": 1.0},
        "grid": {"r_min": 0.0001, "r_max": 10.0, "n": 2000},
    }


@pytest.fixture
def second_order_document():
    """Variational alpha = 0 scenario on a small uniform grid."""
    return {
        "name": "second_order_unit",
        "problem": {"d": 2, "alpha": 0.0, "beta": 1.0, "j": 1.0},
        "potential": {"kind": "gaussian_sine", "amplitude": 1.0, "frequency": 2.0},
        "grid": {"r_min": 0.5, "r_max": 5.0, "n": 121, "grading": "uniform"},
        "solver": {"order": "second", "method": "variational"},
    }


@pytest.fixture
def write_scenario(tmp_path):
    """Write a scenario document to a JSON file and return its path."""

    def _write(document, name="scenario.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return _write
