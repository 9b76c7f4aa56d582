"""Second-order radial system in the unknown rho = m**(alpha + 1/2)."""

import logging
import math
import warnings
from typing import List, NamedTuple, Optional

import numpy as np
from scipy import sparse
from scipy.linalg import LinAlgError, solve_banded
from scipy.sparse.linalg import MatrixRankWarning, spsolve

from ..core import unit_sphere_area
from ..exceptions import (
    ConvergenceError,
    DomainError,
    PositivityBreakdownError,
    RegimeError,
    SingularJacobianError,
)
from ..models.grid import RadialGrid
from ..models.options import (
    BoundaryCondition,
    FunctionalKind,
    SecondOrderMethod,
    SolverOptions,
)
from ..models.problem import ProblemSpec
from ..models.solution import SecondOrderState
from ..numerics import (
    MonotoneRootProblem,
    Stencil,
    cumulative_integral,
    first_derivative_stencil,
    second_derivative_stencil,
    solve_monotone,
)
from ..potentials import eval_potential

logger = logging.getLogger(__name__)

ARMIJO = 1e-4
MAX_HALVINGS = 60
BOUNDARY_FRACTION = 0.99
COLLAPSE = 100.0


def _boundary_step(rho: np.ndarray, direction: np.ndarray, floor: float) -> float:
    """Largest step in (0, 1] that keeps rho above the floor."""
    shrinking = direction < 0.0
    if not np.any(shrinking):
        return 1.0
    room = (rho[shrinking] - floor) / -direction[shrinking]
    return float(min(1.0, BOUNDARY_FRACTION * np.min(room)))


class _Geometry(NamedTuple):
    """Per-grid arrays shared by residuals, functionals and Jacobians."""

    grid: RadialGrid
    r: np.ndarray
    V: np.ndarray
    current: np.ndarray  # j**2 r**(2-2d)
    scale: np.ndarray  # w_i r_i**(d-1)
    cell: np.ndarray  # r_{k+1/2}**(d-1) / h_k
    d1: Stencil
    d2: Stencil


class _InnerResult(NamedTuple):
    rho: np.ndarray
    history: List[float]
    converged: bool
    iterations: int
    collapsed: bool


class SecondOrderSolver:
    """Residuals, discrete functionals and solvers for one problem.

    The reduced equation for rho is discretized with three-point Lagrange
    stencils at interior nodes. Neumann ends use the half-cell balance
    that is the natural boundary condition of the discrete functionals,
    so variational and Newton solves share one discrete system.
    """

    def __init__(self, spec: ProblemSpec, options: Optional[SolverOptions] = None):
        """Initialize the solver for a problem and its numerical options."""
        self.spec = spec
        self.options = options or SolverOptions()
        self.coupling = spec.coupling_spec()

        alpha = spec.alpha
        self.c = 2.0 / (2.0 * alpha + 1.0)
        self.e = (2.0 * alpha - 3.0) / (2.0 * alpha + 1.0)
        self.s = alpha + 0.5
        self.kappa = (2.0 * alpha + 1.0) ** 2 / (2.0 * (alpha + 1.0))
        self.p = (2.0 * alpha + 2.0) / (2.0 * alpha + 1.0)

    @property
    def target(self) -> float:
        if self.options.target_mass is not None:
            return self.options.target_mass
        return 1.0 / unit_sphere_area(self.spec.d)

    @property
    def boundary(self) -> BoundaryCondition:
        return self.options.boundary

    def _geometry(self, grid: RadialGrid) -> _Geometry:
        d = self.spec.d
        r = grid.nodes
        return _Geometry(
            grid=grid,
            r=r,
            V=eval_potential(self.spec.potential, r),
            current=self.spec.j**2 * r ** (2.0 - 2.0 * d),
            scale=grid.weights * r ** (d - 1),
            cell=grid.midpoints ** (d - 1) / grid.steps,
            d1=first_derivative_stencil(grid),
            d2=second_derivative_stencil(grid),
        )

    def _mass(self, geo: _Geometry, rho: np.ndarray) -> float:
        return float(np.dot(geo.scale, rho**self.c))

    def variational_kind(self) -> FunctionalKind:
        """Functional whose Euler-Lagrange equation is the reduced ODE.

        Raises:
            RegimeError: alpha != 0 and j != 0
        """
        if self.spec.alpha == 0.0:
            return FunctionalKind.ALPHA0
        if self.spec.j == 0.0:
            return FunctionalKind.J0
        raise RegimeError(
            "no variational formulation for alpha != 0 and j != 0",
            {"alpha": self.spec.alpha, "j": self.spec.j},
        )

    def initial_state(self, grid: RadialGrid) -> SecondOrderState:
        """Constant density matching the mass, H from the mass-weighted balance."""
        geo = self._geometry(grid)
        m0 = self.target / float(np.sum(geo.scale))
        rho = np.full(grid.size, m0**self.s)
        H = float(np.dot(geo.scale, geo.V) / np.sum(geo.scale)) - float(
            self.coupling.g(m0)
        )
        return self._state(geo, self._with_boundary(rho), H, "initial")

    def _with_boundary(self, rho: np.ndarray) -> np.ndarray:
        rho = np.array(rho, dtype=float)
        if self.boundary.is_dirichlet:
            rho[0], rho[-1] = self.boundary.left, self.boundary.right
        return rho

    def _free(self, size: int) -> slice:
        return slice(1, size - 1) if self.boundary.is_dirichlet else slice(0, size)

    # Reduced ODE

    def _source(self, geo: _Geometry, rho: np.ndarray, H: float) -> np.ndarray:
        m = rho**self.c
        drive = self.s * (self.coupling.g(m) + H - geo.V) * rho ** (0.5 * self.c)
        congestion = 0.25 * (2.0 * self.spec.alpha + 1.0) * geo.current
        return drive - congestion * rho**self.e

    def _source_derivative(
        self, geo: _Geometry, rho: np.ndarray, H: float
    ) -> np.ndarray:
        c, m = self.c, rho**self.c
        half = 0.5 * c
        drive = self.coupling.dg(m) * c * rho ** (c - 1.0) * rho**half + (
            self.coupling.g(m) + H - geo.V
        ) * half * rho ** (half - 1.0)
        congestion = 0.25 * (2.0 * self.spec.alpha + 1.0) * self.e
        return self.s * drive - congestion * geo.current * rho ** (self.e - 1.0)

    def _drift(self, geo: _Geometry, rho: np.ndarray) -> np.ndarray:
        """Coefficient of rho' at interior nodes."""
        r = geo.r[1:-1]
        d, alpha, j = self.spec.d, self.spec.alpha, self.spec.j
        return (d - 1) / r - alpha * j * r ** (1.0 - d) * rho[1:-1] ** (-self.c)

    def _interior_residual(
        self, geo: _Geometry, rho: np.ndarray, H: float
    ) -> np.ndarray:
        return (
            geo.d2.apply(rho)
            + geo.d1.apply(rho) * self._drift(geo, rho)
            - self._source(geo, rho, H)[1:-1]
        )

    @staticmethod
    def _at(values: np.ndarray, index: Optional[int], size: int):
        if index is None:
            return values
        if not 1 <= index <= size - 2:
            raise DomainError(
                "residuals are defined at interior nodes only", {"index": index}
            )
        return float(values[index - 1])

    def ode_residual_general(
        self, state: SecondOrderState, index: Optional[int] = None
    ):
        """Residual of the reduced rho equation at one or all interior nodes."""
        geo = self._geometry(state.grid)
        values = self._interior_residual(geo, state.rho, state.H)
        return self._at(values, index, state.grid.size)

    def ode_residual_alpha0(
        self, state: SecondOrderState, index: Optional[int] = None
    ):
        """Residual of the alpha = 0 form, including the current term."""
        self._require_alpha0()
        geo = self._geometry(state.grid)
        rho, r = state.rho, geo.r[1:-1]
        inner = rho[1:-1]
        laplacian = geo.d2.apply(rho) + (self.spec.d - 1) / r * geo.d1.apply(rho)
        right = 0.5 * (self.coupling.g(inner**2) + state.H - geo.V[1:-1]) * inner
        right -= geo.current[1:-1] / (4.0 * inner**3)
        return self._at(laplacian - right, index, state.grid.size)

    def ode_residual_density(
        self, state: SecondOrderState, index: Optional[int] = None
    ):
        """Residual of the intermediate equation in m at interior nodes."""
        geo = self._geometry(state.grid)
        spec = self.spec
        m = state.m
        inner, r = m[1:-1], geo.r[1:-1]
        dm, d2m = geo.d1.apply(m), geo.d2.apply(m)
        drift = (spec.d - 1) / r - spec.alpha * spec.j * r ** (1.0 - spec.d) / inner
        left = (
            d2m / inner
            + (spec.alpha - 0.5) * (dm / inner) ** 2
            + dm / inner * drift
            + 0.5 * geo.current[1:-1] / inner**2
        )
        right = (self.coupling.g(inner) + state.H - geo.V[1:-1]) * inner ** (
            -spec.alpha
        )
        return self._at(left - right, index, state.grid.size)

    # Discrete functionals

    def _require_alpha0(self) -> None:
        if self.spec.alpha != 0.0:
            raise RegimeError("the alpha = 0 form needs alpha = 0")

    def _require_kind(self, kind: FunctionalKind) -> FunctionalKind:
        kind = FunctionalKind(kind)
        if kind == FunctionalKind.ALPHA0:
            self._require_alpha0()
        elif self.spec.j != 0.0:
            raise RegimeError("the j = 0 functional needs j = 0")
        return kind

    def _pointwise(
        self,
        kind: FunctionalKind,
        geo: _Geometry,
        rho: np.ndarray,
        H: Optional[float],
        order: int,
    ) -> np.ndarray:
        """Pointwise integrand phi (order 0) or its rho-derivatives.

        For alpha0 an H term (H/2) rho**2 is added when H is given, turning
        the functional into the Lagrangian of the mass constraint.
        """
        V, coupling = geo.V, self.coupling
        shift = 0.0 if H is None else H
        if kind == FunctionalKind.ALPHA0:
            m, J = rho**2, geo.current
            if order == 0:
                return (
                    0.5 * coupling.G(m)
                    + 0.5 * (shift - V) * m
                    + J / (4.0 * m)
                )
            if order == 1:
                return (coupling.g(m) + shift - V) * rho - J / (2.0 * rho**3)
            return (
                2.0 * m * coupling.dg(m)
                + coupling.g(m)
                + shift
                - V
                + 1.5 * J / m**2
            )

        alpha = self.spec.alpha
        width = 2.0 * alpha + 1.0
        half = 0.5 * self.c
        if order == 0:
            potential = self.kappa * rho**self.p * (shift - V)
            return width * coupling.G1(rho, alpha) + potential
        if order == 1:
            potential = (shift - V) * rho**half
            return width * (coupling.G1_integrand(rho, alpha) + potential)
        m = rho**self.c
        slope = coupling.dg(m) * self.c * rho ** (self.c + half - 1.0)
        slope += (coupling.g(m) + shift - V) * half * rho ** (half - 1.0)
        return width * slope

    def _objective(
        self, geo: _Geometry, rho: np.ndarray, H: Optional[float], kind: FunctionalKind
    ) -> float:
        dirichlet = float(np.dot(geo.cell, np.diff(rho) ** 2))
        pointwise = self._pointwise(kind, geo, rho, H, 0)
        return dirichlet + float(np.dot(geo.scale, pointwise))

    def _gradient(
        self, geo: _Geometry, rho: np.ndarray, H: Optional[float], kind: FunctionalKind
    ) -> np.ndarray:
        flux = 2.0 * geo.cell * np.diff(rho)
        gradient = geo.scale * self._pointwise(kind, geo, rho, H, 1)
        gradient[:-1] -= flux
        gradient[1:] += flux
        return gradient

    def _hessian(
        self, geo: _Geometry, rho: np.ndarray, H: Optional[float], kind: FunctionalKind
    ):
        """Tridiagonal Hessian as (off-diagonal, diagonal)."""
        diag = geo.scale * self._pointwise(kind, geo, rho, H, 2)
        diag[:-1] += 2.0 * geo.cell
        diag[1:] += 2.0 * geo.cell
        return -2.0 * geo.cell, diag

    def functional_alpha0(self, state: SecondOrderState) -> float:
        """Discrete alpha = 0 functional (no H term)."""
        self._require_alpha0()
        geo = self._geometry(state.grid)
        return self._objective(geo, state.rho, None, FunctionalKind.ALPHA0)

    def functional_alpha0_density(self, state: SecondOrderState) -> float:
        """Same functional written in m = rho**2.

        Cells use m'**2/(4m) with m evaluated at the square of the mean of
        the nodal square roots.
        """
        self._require_alpha0()
        geo = self._geometry(state.grid)
        m = state.m
        root = np.sqrt(m)
        m_mid = (0.5 * (root[1:] + root[:-1])) ** 2
        dirichlet = float(np.dot(geo.cell, np.diff(m) ** 2 / (4.0 * m_mid)))
        pointwise = (
            0.5 * self.coupling.G(m) - 0.5 * geo.V * m + geo.current / (4.0 * m)
        )
        return dirichlet + float(np.dot(geo.scale, pointwise))

    def functional_j0(self, state: SecondOrderState) -> float:
        """Discrete j = 0 functional at the state's H."""
        self._require_kind(FunctionalKind.J0)
        geo = self._geometry(state.grid)
        return self._objective(geo, state.rho, state.H, FunctionalKind.J0)

    def discrete_gradient(
        self, state: SecondOrderState, kind: FunctionalKind
    ) -> np.ndarray:
        """Exact gradient of the discrete functional in the nodal rho values."""
        kind = self._require_kind(kind)
        geo = self._geometry(state.grid)
        H = state.H if kind == FunctionalKind.J0 else None
        return self._gradient(geo, state.rho, H, kind)

    # Variational solve

    def _descent_direction(
        self, off: np.ndarray, diag: np.ndarray, gradient: np.ndarray, free: slice
    ) -> np.ndarray:
        """Newton direction on the free nodes, shifted until it descends."""
        g = gradient[free]
        band_diag = diag[free]
        band_off = off[free.start : free.start + g.size - 1]
        shift = 0.0
        for _ in range(30):
            bands = np.zeros((3, g.size))
            bands[0, 1:] = band_off
            bands[1] = band_diag + shift
            bands[2, :-1] = band_off
            try:
                step = solve_banded((1, 1), bands, -g)
            except (LinAlgError, ValueError):
                step = None
            if step is not None and np.all(np.isfinite(step)) and g @ step < 0.0:
                break
            size = max(1.0, float(np.max(np.abs(band_diag))))
            shift = max(10.0 * shift, 1e-8 * size)
        else:
            step = -g / max(1.0, float(np.max(np.abs(band_diag))))
        direction = np.zeros_like(gradient)
        direction[free] = step
        return direction

    def _scaled_gradient(
        self, geo: _Geometry, gradient: np.ndarray, free: slice
    ) -> float:
        return float(np.max(np.abs(gradient[free] / geo.scale[free])))

    def _minimize_at(
        self,
        geo: _Geometry,
        rho: np.ndarray,
        H: float,
        kind: FunctionalKind,
    ) -> _InnerResult:
        """Newton with backtracking on the Lagrangian at fixed H."""
        free = self._free(rho.size)
        floor = self.options.positivity_floor
        rho = rho.copy()
        value = self._objective(geo, rho, H, kind)
        history = [value]
        for _ in range(self.options.max_iterations):
            gradient = self._gradient(geo, rho, H, kind)
            if self._scaled_gradient(geo, gradient, free) <= self.options.gtol:
                break
            off, diag = self._hessian(geo, rho, H, kind)
            direction = self._descent_direction(off, diag, gradient, free)
            slope = float(gradient @ direction)
            slack = 10.0 * np.finfo(float).eps * (1.0 + abs(value))

            step = _boundary_step(rho, direction, floor)
            accepted = False
            for _ in range(MAX_HALVINGS):
                if step <= 0.0:
                    break
                trial = rho + step * direction
                trial_value = self._objective(geo, trial, H, kind)
                if trial_value <= value + ARMIJO * step * slope + slack:
                    accepted = True
                    break
                step *= 0.5
            if not accepted:
                break
            rho, value = trial, trial_value
            history.append(value)

        gradient = self._gradient(geo, rho, H, kind)
        converged = self._scaled_gradient(geo, gradient, free) <= self.options.gtol
        collapsed = bool(np.min(rho[free]) <= COLLAPSE * floor)
        return _InnerResult(rho, history, converged, len(history) - 1, collapsed)

    def _require_positive(self, result: _InnerResult, H: float) -> None:
        if result.collapsed:
            raise PositivityBreakdownError(
                "the minimizer collapses onto the positivity floor",
                {"floor": self.options.positivity_floor, "H": H},
            )

    def minimize_fixed_H(
        self, grid: RadialGrid, H: float, init: Optional[SecondOrderState] = None
    ) -> SecondOrderState:
        """
        Minimize the Lagrangian of the mass constraint at a given H.

        The mass of the result is whatever H implies; no constraint is imposed.

        Raises:
            PositivityBreakdownError: the minimizer at this H has a dead core
        """
        kind = self.variational_kind()
        geo = self._geometry(grid)
        start = init if init is not None else self.initial_state(grid)
        result = self._minimize_at(geo, self._with_boundary(start.rho), H, kind)
        self._require_positive(result, H)
        return self._state(
            geo,
            result.rho,
            H,
            "variational",
            converged=result.converged,
            iterations=result.iterations,
            history=result.history,
        )

    def minimize_constrained(
        self, grid: RadialGrid, init: Optional[SecondOrderState] = None
    ) -> SecondOrderState:
        """
        Constrained minimization of the discrete functional.

        The mass of the minimizer decreases strictly in H, so H is found by
        monotone root finding; every trial H is minimized by Newton,
        warm-started from the last trial that stayed positive. Without a
        current, large trial H drive the minimizer onto the positivity floor;
        such trials only report their (small) mass to the root finder.

        Args:
            grid: Radial grid
            init: Starting state; defaults to `initial_state`

        Returns:
            State with converged=False when an inner solve hit its cap

        Raises:
            PositivityBreakdownError: the minimizer at the final H has a dead core
        """
        kind = self.variational_kind()
        geo = self._geometry(grid)
        start = init if init is not None else self.initial_state(grid)
        workspace = {"rho": self._with_boundary(start.rho), "solves": 0}

        def mass_at(H: float) -> float:
            result = self._minimize_at(geo, workspace["rho"], H, kind)
            if not result.collapsed:
                workspace["rho"] = result.rho
            workspace["solves"] += 1
            return self._mass(geo, result.rho)

        H = solve_monotone(
            MonotoneRootProblem(
                function=mass_at,
                target=self.target,
                domain_min=-math.inf,
                lower=start.H - 1.0,
                upper=start.H + 1.0,
                tol=self.options.root_tol,
                decreasing=True,
                max_expansions=self.options.max_expansions,
            )
        )
        final = self._minimize_at(geo, workspace["rho"], H, kind)
        self._require_positive(final, H)
        state = self._state(
            geo,
            final.rho,
            H,
            "variational",
            converged=final.converged,
            iterations=final.iterations,
            history=final.history,
        )
        converged = final.converged and state.mass_error <= self.options.mass_tol
        logger.info(
            f"Variational solve: H={H:.10g} after {workspace['solves']} inner "
            f"solves, gradient {state.gradient_norm:.3e}"
        )
        return state.with_values(converged=converged)

    # Newton solve

    def _system(self, geo: _Geometry, rho: np.ndarray, H: float) -> np.ndarray:
        n = rho.size
        residual = np.empty(n + 1)
        residual[1:-2] = self._interior_residual(geo, rho, H)
        source = self._source(geo, rho, H)
        if self.boundary.is_dirichlet:
            residual[0] = rho[0] - self.boundary.left
            residual[n - 1] = rho[-1] - self.boundary.right
        else:
            residual[0] = geo.cell[0] * (rho[1] - rho[0]) / geo.scale[0] - source[0]
            residual[n - 1] = (
                -geo.cell[-1] * (rho[-1] - rho[-2]) / geo.scale[-1] - source[-1]
            )
        residual[n] = self._mass(geo, rho) - self.target
        return residual

    def _jacobian(self, geo: _Geometry, rho: np.ndarray, H: float):
        n = rho.size
        inner = np.arange(1, n - 1)
        spec = self.spec
        drift = self._drift(geo, rho)
        slope = geo.d1.apply(rho)
        drift_derivative = (
            spec.alpha
            * spec.j
            * self.c
            * geo.r[1:-1] ** (1.0 - spec.d)
            * rho[1:-1] ** (-self.c - 1.0)
        )
        source_derivative = self._source_derivative(geo, rho, H)
        source_H = -self.s * rho ** (0.5 * self.c)

        rows = [inner, inner, inner, inner]
        cols = [inner - 1, inner, inner + 1, np.full(n - 2, n)]
        vals = [
            geo.d2.lower + drift * geo.d1.lower,
            geo.d2.diag
            + drift * geo.d1.diag
            + slope * drift_derivative
            - source_derivative[1:-1],
            geo.d2.upper + drift * geo.d1.upper,
            source_H[1:-1],
        ]

        if self.boundary.is_dirichlet:
            rows += [[0], [n - 1]]
            cols += [[0], [n - 1]]
            vals += [[1.0], [1.0]]
        else:
            left = geo.cell[0] / geo.scale[0]
            right = geo.cell[-1] / geo.scale[-1]
            rows += [[0, 0, 0], [n - 1, n - 1, n - 1]]
            cols += [[0, 1, n], [n - 1, n - 2, n]]
            vals += [
                [-left - source_derivative[0], left, source_H[0]],
                [-right - source_derivative[-1], right, source_H[-1]],
            ]

        rows.append(np.full(n, n))
        cols.append(np.arange(n))
        vals.append(geo.scale * self.c * rho ** (self.c - 1.0))

        return sparse.csc_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n + 1, n + 1),
        )

    def solve_bvp_newton(
        self, grid: RadialGrid, init: Optional[SecondOrderState] = None
    ) -> SecondOrderState:
        """
        Damped Newton on the discrete reduced ODE with H as an unknown.

        Unknowns are the nodal rho values and H; equations are the interior
        residuals, the two boundary rows and the mass constraint.

        Raises:
            SingularJacobianError: Newton system has no finite solution
            ConvergenceError: residual did not fall below rtol
            PositivityBreakdownError: no damped step kept rho positive
        """
        geo = self._geometry(grid)
        start = init if init is not None else self.initial_state(grid)
        rho, H = self._with_boundary(start.rho), float(start.H)
        floor = self.options.positivity_floor
        n = rho.size

        residual = self._system(geo, rho, H)
        norm = float(np.max(np.abs(residual)))
        iterations = 0
        while norm > self.options.rtol:
            if iterations >= self.options.newton_max_iterations:
                raise ConvergenceError(
                    f"Newton stopped at residual {norm:.3e} after {iterations} steps",
                    best_state=self._state(
                        geo, rho, H, "newton", iterations=iterations
                    ),
                )
            iterations += 1
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", MatrixRankWarning)
                delta = spsolve(self._jacobian(geo, rho, H), -residual)
            bad = np.flatnonzero(~np.isfinite(delta))
            if bad.size:
                index = int(min(bad[0], n - 1))
                raise SingularJacobianError(
                    f"singular Newton system near r={grid.nodes[index]:.6g}",
                    node_index=index,
                )

            step, positive, accepted = 1.0, False, False
            for _ in range(MAX_HALVINGS):
                trial = rho + step * delta[:n]
                if np.min(trial) > floor:
                    positive = True
                    trial_H = H + step * delta[n]
                    trial_residual = self._system(geo, trial, trial_H)
                    trial_norm = float(np.max(np.abs(trial_residual)))
                    if trial_norm < (1.0 - ARMIJO * step) * norm:
                        accepted = True
                        break
                step *= 0.5
            if not accepted:
                if not positive:
                    raise PositivityBreakdownError(
                        "damped Newton could not keep rho above the floor",
                        {"iteration": iterations},
                    )
                raise ConvergenceError(
                    f"Newton diverged at residual {norm:.3e}",
                    best_state=self._state(
                        geo, rho, H, "newton", iterations=iterations
                    ),
                )
            rho, H, residual, norm = trial, trial_H, trial_residual, trial_norm
            logger.debug(
                f"Newton step {iterations}: residual {norm:.3e}, damping {step:g}"
            )

        logger.info(f"Newton solve: H={H:.10g} in {iterations} steps")
        return self._state(
            geo, rho, H, "newton", converged=True, iterations=iterations
        )

    # Outputs

    def node_residuals(self, state: SecondOrderState) -> np.ndarray:
        """Residual of the discrete system at every node, boundary rows included."""
        geo = self._geometry(state.grid)
        return self._system(geo, state.rho, state.H)[:-1]

    def reconstruct_u(self, state: SecondOrderState) -> np.ndarray:
        """
        Value function from the second-order current identity.

        u' = (j r**(1-d) - m') m**(alpha-1), integrated from r = 1. The
        diffusive part m' m**(alpha-1) has the antiderivative m**alpha / alpha
        (log m at alpha = 0) and is taken in closed form; only the current
        part goes through the trapezoid rule.
        """
        grid = state.grid
        r, m = grid.nodes, state.m
        alpha = self.spec.alpha
        base = grid.index_of(1.0)
        drift = self.spec.j * cumulative_integral(
            grid, r ** (1.0 - self.spec.d) * m ** (alpha - 1.0), base
        )
        if alpha == 0.0:
            diffusion = np.log(m / m[base])
        else:
            diffusion = (m**alpha - m[base] ** alpha) / alpha
        return drift - diffusion

    def solve(self, grid: RadialGrid) -> SecondOrderState:
        """Dispatch on the configured method; auto prefers the variational solve."""
        method = SecondOrderMethod(self.options.method)
        if method == SecondOrderMethod.AUTO:
            try:
                self.variational_kind()
                method = SecondOrderMethod.VARIATIONAL
            except RegimeError:
                method = SecondOrderMethod.NEWTON
        if method == SecondOrderMethod.VARIATIONAL:
            return self.minimize_constrained(grid)
        return self.solve_bvp_newton(grid)

    def _state(
        self,
        geo: _Geometry,
        rho: np.ndarray,
        H: float,
        method: str,
        converged: bool = False,
        iterations: int = 0,
        history: Optional[List[float]] = None,
    ) -> SecondOrderState:
        functional_value = gradient_norm = None
        try:
            kind = self.variational_kind()
        except RegimeError:
            kind = None
        if kind is not None:
            functional_H = H if kind == FunctionalKind.J0 else None
            functional_value = self._objective(geo, rho, functional_H, kind)
            gradient_norm = self._scaled_gradient(
                geo, self._gradient(geo, rho, H, kind), self._free(rho.size)
            )
        residual_norm = None
        if rho.size >= 3:
            interior = self._interior_residual(geo, rho, H)
            residual_norm = float(np.max(np.abs(interior)))
        return SecondOrderState(
            spec=self.spec,
            grid=geo.grid,
            rho=rho,
            H=H,
            j=self.spec.j,
            boundary=self.boundary,
            method=method,
            functional_value=functional_value,
            gradient_norm=gradient_norm,
            residual_norm=residual_norm,
            mass_error=abs(self._mass(geo, rho) / self.target - 1.0),
            converged=converged,
            iterations=iterations,
            objective_history=history or [],
        )


def ode_residual_general(
    spec: ProblemSpec, state: SecondOrderState, index: Optional[int] = None
):
    return SecondOrderSolver(spec).ode_residual_general(state, index)


def ode_residual_alpha0(
    spec: ProblemSpec, state: SecondOrderState, index: Optional[int] = None
):
    return SecondOrderSolver(spec).ode_residual_alpha0(state, index)


def functional_alpha0(spec: ProblemSpec, state: SecondOrderState) -> float:
    return SecondOrderSolver(spec).functional_alpha0(state)


def functional_j0(spec: ProblemSpec, state: SecondOrderState) -> float:
    return SecondOrderSolver(spec).functional_j0(state)


def discrete_gradient(
    spec: ProblemSpec, state: SecondOrderState, kind: FunctionalKind
) -> np.ndarray:
    return SecondOrderSolver(spec).discrete_gradient(state, kind)


def minimize_constrained(
    spec: ProblemSpec,
    grid: RadialGrid,
    init: Optional[SecondOrderState] = None,
    options: Optional[SolverOptions] = None,
) -> SecondOrderState:
    return SecondOrderSolver(spec, options).minimize_constrained(grid, init)


def solve_bvp_newton(
    spec: ProblemSpec,
    grid: RadialGrid,
    init: Optional[SecondOrderState] = None,
    options: Optional[SolverOptions] = None,
) -> SecondOrderState:
    return SecondOrderSolver(spec, options).solve_bvp_newton(grid, init)


def reconstruct_u_second_order(
    spec: ProblemSpec, state: SecondOrderState
) -> np.ndarray:
    return SecondOrderSolver(spec).reconstruct_u(state)
