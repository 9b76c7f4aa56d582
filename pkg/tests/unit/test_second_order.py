"""Tests for the second-order residuals, functionals and solvers."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from radial_mfg.exceptions import DomainError, PositivityBreakdownError, RegimeError
from radial_mfg.models.options import (
    BoundaryCondition,
    FunctionalKind,
    SolverOptions,
)
from radial_mfg.models.potential import PotentialSpec
from radial_mfg.models.problem import ProblemSpec
from radial_mfg.models.solution import SecondOrderState
from radial_mfg.numerics import build_grid
from radial_mfg.services.second_order import (
    SecondOrderSolver,
    discrete_gradient,
    functional_alpha0,
    functional_j0,
    minimize_constrained,
    ode_residual_alpha0,
    ode_residual_general,
    reconstruct_u_second_order,
    solve_bvp_newton,
)


def _state(spec, grid, rho, H=0.0):
    return SecondOrderState(spec=spec, grid=grid, rho=rho, H=H, j=spec.j)


def _central_difference(functional, spec, state, step=1e-6):
    gradient = np.empty(state.grid.size)
    for i in range(state.grid.size):
        forward, backward = state.rho.copy(), state.rho.copy()
        forward[i] += step
        backward[i] -= step
        gradient[i] = (
            functional(spec, state.with_values(rho=forward))
            - functional(spec, state.with_values(rho=backward))
        ) / (2.0 * step)
    return gradient


@pytest.fixture
def j0_spec():
    """alpha = 1/2 without current, where the j = 0 functional applies."""
    return ProblemSpec(
        d=2, alpha=0.5, beta=1.0, j=0.0, potential=PotentialSpec.gaussian_sine(2.0)
    )


@pytest.fixture
def minimizer(alpha0_spec, alpha0_grid):
    """Variational solution of the alpha = 0 reference problem."""
    return minimize_constrained(alpha0_spec, alpha0_grid)


class TestDiscreteGradient:
    """Compare the analytic gradients with central differences."""

    def test_alpha0_gradient(self, alpha0_spec, rng):
        """The alpha = 0 gradient matches finite differences."""
        grid = build_grid(0.5, 5.0, 12, "uniform")
        for _ in range(20):
            state = _state(alpha0_spec, grid, rng.uniform(0.5, 1.5, grid.size))
            exact = discrete_gradient(alpha0_spec, state, FunctionalKind.ALPHA0)
            approx = _central_difference(functional_alpha0, alpha0_spec, state)
            np.testing.assert_allclose(exact, approx, rtol=1e-6, atol=1e-8)

    def test_j0_gradient(self, j0_spec, rng):
        """The j = 0 gradient matches finite differences at random H."""
        grid = build_grid(0.5, 5.0, 12, "uniform")
        for _ in range(20):
            rho = rng.uniform(0.5, 1.5, grid.size)
            state = _state(j0_spec, grid, rho, H=rng.uniform(-1.0, 1.0))
            exact = discrete_gradient(j0_spec, state, FunctionalKind.J0)
            approx = _central_difference(functional_j0, j0_spec, state)
            np.testing.assert_allclose(exact, approx, rtol=1e-6, atol=1e-8)

    def test_wrong_regime(self, alpha0_spec, alpha0_grid):
        """The j = 0 functional is refused when a current is present."""
        state = SecondOrderSolver(alpha0_spec).initial_state(alpha0_grid)
        with pytest.raises(RegimeError):
            discrete_gradient(alpha0_spec, state, FunctionalKind.J0)

    def test_density_form_agrees(self, alpha0_spec, alpha0_grid):
        """Written in m, the functional has the same value on constant states."""
        solver = SecondOrderSolver(alpha0_spec)
        state = _state(alpha0_spec, alpha0_grid, np.full(alpha0_grid.size, 0.3))
        assert solver.functional_alpha0_density(state) == pytest.approx(
            solver.functional_alpha0(state), rel=1e-12
        )

    def test_j0_functional_reduces_at_alpha0(self, rng):
        """At alpha = 0 and j = 0 both functionals differ only by the H term."""
        spec = ProblemSpec(
            d=2, alpha=0.0, beta=1.0, j=0.0, potential=PotentialSpec.gaussian_sine(2.0)
        )
        grid = build_grid(0.5, 5.0, 41, "uniform")
        rho = rng.uniform(0.5, 1.5, grid.size)
        plain = functional_alpha0(spec, _state(spec, grid, rho))
        assert functional_j0(spec, _state(spec, grid, rho)) == pytest.approx(
            plain, rel=1e-10
        )
        H = 0.8
        penalty = 0.5 * H * float(np.dot(grid.weights * grid.nodes, rho**2))
        assert functional_j0(spec, _state(spec, grid, rho, H=H)) == pytest.approx(
            plain + penalty, rel=1e-10
        )

    def test_gradient_is_discrete_equation_d2(self, alpha0_spec, alpha0_grid, rng):
        """On a uniform planar grid the gradient is -2 w r times the residual."""
        rho = rng.uniform(0.5, 1.5, alpha0_grid.size)
        state = _state(alpha0_spec, alpha0_grid, rho)
        gradient = discrete_gradient(alpha0_spec, state, FunctionalKind.ALPHA0)
        scale = alpha0_grid.weights * alpha0_grid.nodes
        np.testing.assert_allclose(
            gradient[1:-1] / (-2.0 * scale[1:-1]),
            ode_residual_alpha0(alpha0_spec, state),
            rtol=1e-9,
            atol=1e-9,
        )

    def test_gradient_is_discrete_equation_d3(self):
        """In three dimensions the two differ at second order in h."""
        spec = ProblemSpec(
            d=3, alpha=0.0, beta=1.0, j=1.0, potential=PotentialSpec.gaussian_sine(2.0)
        )
        gaps = []
        for n in (101, 201, 401):
            grid = build_grid(0.5, 5.0, n, "uniform")
            state = _state(spec, grid, 1.0 + 0.3 * np.sin(grid.nodes))
            gradient = discrete_gradient(spec, state, FunctionalKind.ALPHA0)
            scale = grid.weights * grid.nodes**2
            gap = gradient[1:-1] / (-2.0 * scale[1:-1]) - ode_residual_alpha0(
                spec, state
            )
            gaps.append(float(np.max(np.abs(gap))))
        assert gaps[0] / gaps[1] > 3.0
        assert gaps[1] / gaps[2] > 3.0


class TestResiduals:
    """Test the pointwise residual forms."""

    def test_alpha0_form_matches_general(self, alpha0_spec, alpha0_grid, rng):
        """At alpha = 0 both forms of the reduced equation coincide."""
        rho = rng.uniform(0.5, 1.5, alpha0_grid.size)
        state = _state(alpha0_spec, alpha0_grid, rho, H=0.7)
        np.testing.assert_allclose(
            ode_residual_alpha0(alpha0_spec, state),
            ode_residual_general(alpha0_spec, state),
            rtol=1e-12,
            atol=1e-12,
        )

    def test_density_form_is_chain_rule(self, rng):
        """Residual in rho equals s m**s times the residual in m, up to O(h**2)."""
        spec = ProblemSpec(
            d=2, alpha=0.5, beta=1.0, j=1.0, potential=PotentialSpec.gaussian_sine(2.0)
        )
        solver = SecondOrderSolver(spec)
        a, b = rng.uniform(0.1, 0.3, 2)
        gaps = []
        for n in (101, 201, 401):
            grid = build_grid(0.5, 5.0, n, "uniform")
            r = grid.nodes
            state = _state(spec, grid, 1.0 + a * np.sin(r) + b * np.cos(2.0 * r), H=0.7)
            m = state.m[1:-1]
            general = solver.ode_residual_general(state)
            density = solver.ode_residual_density(state)
            gap = general - solver.s * m**solver.s * density
            gaps.append(float(np.max(np.abs(gap))))
        orders = np.log2(np.asarray(gaps[:-1]) / np.asarray(gaps[1:]))
        assert np.all(orders > 1.8), orders

    def test_single_node(self, alpha0_spec, alpha0_grid):
        """An interior index returns one float from the full residual."""
        state = SecondOrderSolver(alpha0_spec).initial_state(alpha0_grid)
        everything = ode_residual_general(alpha0_spec, state)
        assert ode_residual_general(alpha0_spec, state, 5) == everything[4]

    @pytest.mark.parametrize("index", [0, 180])
    def test_boundary_index(self, alpha0_spec, alpha0_grid, index):
        """Residuals are not defined at the boundary nodes."""
        state = SecondOrderSolver(alpha0_spec).initial_state(alpha0_grid)
        with pytest.raises(DomainError):
            ode_residual_general(alpha0_spec, state, index)

    def test_alpha0_form_needs_alpha0(self, j0_spec, alpha0_grid):
        """The alpha = 0 form is refused for other exponents."""
        state = SecondOrderSolver(j0_spec).initial_state(alpha0_grid)
        with pytest.raises(RegimeError):
            ode_residual_alpha0(j0_spec, state)

    def test_state_requires_positive_rho(self, alpha0_spec, alpha0_grid):
        """rho must stay strictly positive."""
        rho = np.ones(alpha0_grid.size)
        rho[3] = 0.0
        with pytest.raises(ValueError):
            _state(alpha0_spec, alpha0_grid, rho)


class TestVariationalSolve:
    """Test the constrained minimization."""

    def test_converges(self, minimizer):
        """The minimizer satisfies the discrete equation and the mass."""
        assert minimizer.converged
        assert minimizer.method == "variational"
        assert minimizer.mass_error <= 1e-6
        assert minimizer.residual_norm <= 1e-4

    def test_objective_decreases(self, minimizer):
        """Backtracking never increases the Lagrangian."""
        history = np.asarray(minimizer.objective_history)
        assert np.all(np.diff(history) <= 1e-12 * (1.0 + np.abs(history[:-1])))

    def test_j0_regime(self):
        """The j = 0 functional is minimized for alpha != 0."""
        spec = ProblemSpec(
            d=2, alpha=0.5, j=0.0, potential=PotentialSpec.gaussian(amplitude=0.002)
        )
        grid = build_grid(0.5, 5.0, 61, "uniform")
        state = minimize_constrained(spec, grid)
        assert state.converged
        assert state.residual_norm <= 1e-4

    def test_current_parity(self, alpha0_spec, alpha0_grid, minimizer):
        """Reversing j keeps rho and H; u splits into even and odd parts."""
        reverse = alpha0_spec.model_copy(update={"j": -1.0})
        backward = minimize_constrained(reverse, alpha0_grid)
        assert backward.H == pytest.approx(minimizer.H, abs=1e-12)
        np.testing.assert_allclose(backward.rho, minimizer.rho, rtol=1e-12)

        still = alpha0_spec.model_copy(update={"j": 0.0})
        forward_u = reconstruct_u_second_order(alpha0_spec, minimizer)
        backward_u = reconstruct_u_second_order(reverse, minimizer)
        np.testing.assert_allclose(
            forward_u + backward_u,
            2.0 * reconstruct_u_second_order(still, minimizer),
            atol=1e-12,
        )

    def test_fixed_H_reproduces_minimizer(self, alpha0_spec, alpha0_grid, minimizer):
        """At the constrained H the unconstrained minimizer carries the mass."""
        solver = SecondOrderSolver(alpha0_spec)
        state = solver.minimize_fixed_H(alpha0_grid, minimizer.H)
        assert state.converged
        assert state.H == minimizer.H
        np.testing.assert_allclose(state.rho, minimizer.rho, rtol=0.0, atol=1e-6)
        assert state.mass_error <= 1e-5

    def test_fixed_H_dead_core(self, j0_spec, alpha0_grid):
        """Without a current, H far above V empties the domain."""
        solver = SecondOrderSolver(j0_spec)
        with pytest.raises(PositivityBreakdownError):
            solver.minimize_fixed_H(alpha0_grid, 50.0)

    def test_no_functional(self, alpha0_grid):
        """alpha != 0 with a current has no variational formulation."""
        spec = ProblemSpec(d=2, alpha=0.5, j=1.0)
        with pytest.raises(RegimeError):
            minimize_constrained(spec, alpha0_grid)

    def test_auto_uses_newton(self, alpha0_grid, mocker):
        """Without a functional, auto dispatch falls back to Newton."""
        spec = ProblemSpec(d=2, alpha=0.5, j=1.0)
        solver = SecondOrderSolver(spec)
        newton = mocker.patch.object(solver, "solve_bvp_newton", return_value="x")
        assert solver.solve(alpha0_grid) == "x"
        newton.assert_called_once_with(alpha0_grid)

    def test_auto_prefers_variational(self, alpha0_spec, alpha0_grid, mocker):
        """With a functional, auto dispatch minimizes."""
        solver = SecondOrderSolver(alpha0_spec)
        variational = mocker.patch.object(
            solver, "minimize_constrained", return_value="x"
        )
        assert solver.solve(alpha0_grid) == "x"
        variational.assert_called_once_with(alpha0_grid)


class TestNewtonSolve:
    """Test the damped Newton solve."""

    def test_agrees_with_minimizer(self, alpha0_spec, alpha0_grid, minimizer):
        """Newton from a perturbed minimizer returns to it."""
        rho = minimizer.rho * (1.0 + 0.01 * np.sin(alpha0_grid.nodes))
        start = minimizer.with_values(rho=rho, H=minimizer.H + 0.1)
        state = solve_bvp_newton(alpha0_spec, alpha0_grid, init=start)
        assert state.converged
        assert state.method == "newton"
        assert state.H == pytest.approx(minimizer.H, abs=1e-6)
        np.testing.assert_allclose(state.rho, minimizer.rho, rtol=0.0, atol=1e-6)

    def test_manufactured_solution(self):
        """Dirichlet problem with known rho converges at second order."""
        spec, options = self._manufactured_problem()
        errors = []
        for n in (41, 81, 161):
            grid = build_grid(1.0, 2.0, n, "uniform")
            exact = self._exact(grid.nodes)
            state = solve_bvp_newton(
                spec, grid, init=_state(spec, grid, exact), options=options
            )
            assert state.converged
            errors.append(float(np.max(np.abs(state.rho - exact))))
        orders = np.log2(np.asarray(errors[:-1]) / np.asarray(errors[1:]))
        assert np.all((orders >= 1.8) & (orders <= 2.2)), orders

    @staticmethod
    def _exact(r):
        return 1.0 + 0.5 * np.sin(math.pi * r)

    def _manufactured_problem(self):
        r = np.linspace(1.0, 2.0, 20001)
        rho = self._exact(r)
        d_rho = 0.5 * math.pi * np.cos(math.pi * r)
        d2_rho = -0.5 * math.pi**2 * np.sin(math.pi * r)
        laplacian = d2_rho + d_rho / r
        V = rho**2 - 2.0 * (laplacian + r**-2.0 / (4.0 * rho**3)) / rho
        spec = ProblemSpec(
            d=2,
            alpha=0.0,
            beta=1.0,
            j=1.0,
            potential=PotentialSpec(
                kind="tabulated", radii=r.tolist(), values=V.tolist()
            ),
        )
        mass, _ = quad(lambda x: x * self._exact(x) ** 2, 1.0, 2.0, epsabs=1e-14)
        options = SolverOptions(
            order="second",
            method="newton",
            boundary=BoundaryCondition(kind="dirichlet", left=1.0, right=1.0),
            target_mass=mass,
        )
        return spec, options


class TestReconstructU:
    """Test the value function of a second-order state."""

    def test_zero_current(self):
        """With j = 0 and alpha = 0, u = -log(m / m(1))."""
        spec = ProblemSpec(d=2, alpha=0.0, j=0.0)
        grid = build_grid(0.5, 3.0, 401, "uniform")
        state = _state(spec, grid, np.exp(-grid.nodes))
        u = reconstruct_u_second_order(spec, state)
        assert u[grid.index_of(1.0)] == 0.0
        np.testing.assert_allclose(u, 2.0 * (grid.nodes - 1.0), atol=1e-4)

    def test_current_adds_drift(self, alpha0_spec, alpha0_grid):
        """On a constant density the current alone drives u."""
        state = _state(alpha0_spec, alpha0_grid, np.full(alpha0_grid.size, 0.5))
        u = reconstruct_u_second_order(alpha0_spec, state)
        expected = np.log(alpha0_grid.nodes) / 0.25
        np.testing.assert_allclose(u, expected, rtol=1e-3, atol=1e-6)
