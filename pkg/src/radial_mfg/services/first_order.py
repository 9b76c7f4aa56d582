"""Explicit solution of the first-order radial system."""

import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core import check_admissibility, invert_Fj_array, unit_sphere_area
from ..exceptions import DomainError, TargetUnattainableError
from ..models.grid import RadialGrid
from ..models.options import SolverOptions
from ..models.problem import ProblemSpec
from ..models.solution import NoSolution, RadialSolution
from ..numerics import (
    MonotoneRootProblem,
    build_grid,
    cumulative_integral,
    integrate,
    solve_monotone,
)
from ..potentials import eval_potential

logger = logging.getLogger(__name__)

FirstOrderResult = Union[RadialSolution, NoSolution]


class FirstOrderSolver:
    """Solver for one first-order problem.

    With a nonzero current the density is explicit in H through the
    inverse congestion map; H is then fixed by the mass constraint. With
    zero current the density is (V - H)**(1/beta) and u is constant.
    """

    def __init__(self, spec: ProblemSpec, options: Optional[SolverOptions] = None):
        """Initialize the solver for a problem and its numerical options."""
        self.spec = spec
        self.options = options or SolverOptions()
        self.curve = spec.curve()

        gap = 2.0 + spec.beta - spec.alpha
        self.density_power = -2.0 * (spec.d - 1) / gap
        self.phi_power = (spec.d - 1) * (spec.beta - spec.alpha) / gap

    @property
    def target(self) -> float:
        """Required value of the integral of r**(d-1) m."""
        if self.options.target_mass is not None:
            return self.options.target_mass
        return 1.0 / unit_sphere_area(self.spec.d)

    def _require_current(self) -> None:
        if self.spec.j == 0.0:
            raise DomainError("the explicit density formula needs j != 0")

    def _congestion_root(self, H: float, r: np.ndarray) -> np.ndarray:
        argument = (H - eval_potential(self.spec.potential, r)) * r**self.spec.sigma
        return invert_Fj_array(self.curve, argument, self.options.invert_tol)

    def density_at(self, H: float, r):
        """
        Density of the explicit solution at radius r.

        Args:
            H: Effective Hamiltonian
            r: Radius or array of radii, all positive

        Returns:
            r**(-2(d-1)/(2+beta-alpha)) * F_j^{-1}((H - V(r)) r**sigma)**(1/beta)
        """
        self._require_current()
        radii = np.asarray(r, dtype=float)
        if np.any(radii <= 0.0):
            raise DomainError("the density is evaluated at r > 0")
        t = self._congestion_root(H, np.atleast_1d(radii))
        m = np.atleast_1d(radii) ** self.density_power * t ** (1.0 / self.spec.beta)
        return float(m[0]) if np.ndim(r) == 0 else m

    def phi_integrand(self, H: float, r: np.ndarray) -> np.ndarray:
        """r**((d-1)(beta-alpha)/(2+beta-alpha)) * F_j^{-1}(...)**(1/beta)."""
        self._require_current()
        r = np.asarray(r, dtype=float)
        t = self._congestion_root(H, r)
        return r**self.phi_power * t ** (1.0 / self.spec.beta)

    def mass_functional(self, H: float, grid: RadialGrid) -> float:
        """
        Integral of r**(d-1) m(r; H) over the grid.

        When head correction is enabled the integral over (0, r_min) is
        added from the local power law of the integrand.
        """
        integrand = self.phi_integrand(H, grid.nodes)
        total = integrate(grid, integrand)
        exponent = self.phi_power + 1.0
        if self.options.head_correction and exponent > 0.0:
            total += integrand[0] * grid.r_min / exponent
        return total

    def phi_curve(
        self, h_values: Sequence[float], grid: RadialGrid
    ) -> List[Tuple[float, float]]:
        """Samples (H, phi(H))."""
        return [(float(H), self.mass_functional(float(H), grid)) for H in h_values]

    def solve_H(self, grid: RadialGrid) -> float:
        """
        Effective Hamiltonian matching the mass target.

        Raises:
            TargetUnattainableError: phi never reaches the target on (0, inf)
        """
        self._require_current()
        problem = MonotoneRootProblem(
            function=lambda H: self.mass_functional(H, grid),
            target=self.target,
            domain_min=0.0,
            tol=self.options.root_tol,
            decreasing=True,
            max_expansions=self.options.max_expansions,
        )
        H = solve_monotone(problem)
        logger.info(
            f"Solved H={H:.10g} for alpha={self.spec.alpha:g} on {grid.describe()}"
        )
        return H

    def _truncation_shift(self, H: float, grid: RadialGrid) -> Optional[float]:
        wider = build_grid(grid.r_min, 2.0 * grid.r_max, 2 * grid.size, grid.grading)
        options = self.options.model_copy(update={"check_truncation": False})
        try:
            H_wide = FirstOrderSolver(self.spec, options).solve_H(wider)
        except TargetUnattainableError:
            return None
        return abs(H_wide - H)

    def solve(self, grid: RadialGrid) -> FirstOrderResult:
        """
        Solve the first-order problem on a grid.

        Returns:
            RadialSolution, or NoSolution when H does not exist
        """
        if self.spec.j == 0.0 or self.spec.is_full_space:
            return self.solve_zero_current(grid)

        warnings = list(check_admissibility(self.spec, self.options).warnings)
        try:
            H = self.solve_H(grid)
        except TargetUnattainableError as e:
            logger.warning(f"No effective Hamiltonian: {e.message}")
            return NoSolution(
                reason=f"mass target not attained: {e.message}",
                j=self.spec.j,
                target=self.target,
                curve=e.samples,
            )

        nodes = grid.nodes
        d, alpha, j = self.spec.d, self.spec.alpha, self.spec.j
        m = self.density_at(H, nodes)
        u = j * cumulative_integral(grid, m ** (alpha - 1.0) * nodes ** (1.0 - d))
        flux = np.gradient(u, nodes, edge_order=2) * m ** (1.0 - alpha)
        current_deviation = flux * nodes ** (d - 1) - j

        shift = None
        if self.options.check_truncation:
            shift = self._truncation_shift(H, grid)
            if shift is None:
                warnings.append("truncation check failed on the doubled domain")
            elif shift > 10.0 * self.options.root_tol:
                warnings.append(
                    f"H shifts by {shift:.3e} when r_max is doubled; "
                    "truncation error dominates the root tolerance"
                )
                logger.warning(warnings[-1])

        return RadialSolution(
            spec=self.spec,
            grid=grid,
            m=m,
            u=u,
            H=H,
            j=j,
            hj_residual=self._hj_values(nodes, m, H),
            current_deviation=current_deviation,
            mass=self.mass_functional(H, grid) / self.target,
            truncation_shift=shift,
            warnings=warnings,
        )

    def _zero_current_mass(self, H: float, grid: RadialGrid, V: np.ndarray) -> float:
        excess = np.clip(V - H, 0.0, None)
        return integrate(
            grid, grid.nodes ** (self.spec.d - 1) * excess ** (1.0 / self.spec.beta)
        )

    def solve_zero_current(self, grid: RadialGrid) -> FirstOrderResult:
        """
        Solve the j = 0 branch, m = (V - H)**(1/beta) and u = 0.

        A strictly positive density needs H < inf V on the grid, and the mass
        grows as H decreases. If the mass already reaches the target at
        H = inf V, no admissible H exists and NoSolution is returned.
        """
        if self.spec.j != 0.0:
            raise DomainError("solve_zero_current needs j = 0")
        V = eval_potential(self.spec.potential, grid.nodes)
        floor = float(np.min(V))
        boundary_mass = self._zero_current_mass(floor, grid, V)
        target = self.target

        def mass_below(gap: float) -> float:
            return self._zero_current_mass(floor - gap, grid, V)

        if boundary_mass >= target:
            gaps = np.concatenate(([0.0], np.geomspace(1e-3, 10.0, 25)))
            curve = [(floor - gap, mass_below(gap)) for gap in gaps]
            logger.warning(
                f"No positive j=0 solution: mass {boundary_mass:.6g} at "
                f"H=inf V already exceeds target {target:.6g}"
            )
            return NoSolution(
                reason="mass at the critical H exceeds the target",
                j=0.0,
                target=target,
                critical_H=floor,
                boundary_mass=boundary_mass,
                curve=sorted(curve),
            )

        gap = solve_monotone(
            MonotoneRootProblem(
                function=mass_below,
                target=target,
                domain_min=0.0,
                tol=self.options.root_tol,
                decreasing=False,
                max_expansions=self.options.max_expansions,
            )
        )
        H = floor - gap
        m = (V - H) ** (1.0 / self.spec.beta)
        warnings = []
        if V[-1] - H > 0.0:
            warnings.append(
                "V(r_max) > H: the mass keeps growing past r_max, "
                "so this solution exists on the truncated domain only"
            )
            logger.warning(warnings[-1])
        logger.info(f"Solved zero-current H={H:.10g} on {grid.describe()}")

        u = np.zeros_like(m)
        return RadialSolution(
            spec=self.spec,
            grid=grid,
            m=m,
            u=u,
            H=H,
            j=0.0,
            hj_residual=self._hj_values(grid.nodes, m, H),
            current_deviation=np.zeros_like(m),
            mass=self._zero_current_mass(H, grid, V) / target,
            warnings=warnings,
        )

    def _hj_values(self, r: np.ndarray, m: np.ndarray, H: float) -> np.ndarray:
        spec = self.spec
        V = eval_potential(spec.potential, r)
        if spec.j == 0.0:
            return m**spec.beta - (V - H)
        current = 0.5 * spec.j**2 * r ** (2.0 - 2.0 * spec.d) * m ** (spec.alpha - 2.0)
        return current - m**spec.beta - (H - V)

    def hj_residual(self, solution: RadialSolution) -> np.ndarray:
        """Per-node residual of the first-order Hamilton-Jacobi relation."""
        return self._hj_values(solution.grid.nodes, solution.m, solution.H)


def density_at(spec: ProblemSpec, H: float, r, options: Optional[SolverOptions] = None):
    return FirstOrderSolver(spec, options).density_at(H, r)


def mass_functional(
    spec: ProblemSpec,
    H: float,
    grid: RadialGrid,
    options: Optional[SolverOptions] = None,
) -> float:
    return FirstOrderSolver(spec, options).mass_functional(H, grid)


def solve_H(
    spec: ProblemSpec, grid: RadialGrid, options: Optional[SolverOptions] = None
) -> float:
    return FirstOrderSolver(spec, options).solve_H(grid)


def solve_first_order(
    spec: ProblemSpec, grid: RadialGrid, options: Optional[SolverOptions] = None
) -> FirstOrderResult:
    return FirstOrderSolver(spec, options).solve(grid)


def solve_zero_current(
    spec: ProblemSpec, grid: RadialGrid, options: Optional[SolverOptions] = None
) -> FirstOrderResult:
    return FirstOrderSolver(spec, options).solve_zero_current(grid)


def hj_residual(spec: ProblemSpec, solution: RadialSolution) -> np.ndarray:
    return FirstOrderSolver(spec).hj_residual(solution)
