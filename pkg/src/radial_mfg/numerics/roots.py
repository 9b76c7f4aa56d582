"""Root finding for strictly monotone scalar functions."""

import logging
import math
from typing import Callable, List, Optional, Tuple

from pydantic import ConfigDict, Field
from scipy.optimize import brentq

from ..exceptions import NumericalError, TargetUnattainableError
from ..models.base import BaseModel

logger = logging.getLogger(__name__)

MAGNITUDE_CAP = 2.0**60


class MonotoneRootProblem(BaseModel):
    """Find x in (domain_min, domain_max) with function(x) = target."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    function: Callable[[float], float]
    target: float
    domain_min: float = 0.0
    domain_max: float = math.inf
    lower: float = Field(default=1e-6, description="Initial bracket, lower end")
    upper: float = Field(default=1.0, description="Initial bracket, upper end")
    tol: float = Field(default=1e-8, gt=0.0)
    decreasing: Optional[bool] = Field(
        None, description="Direction of monotonicity; detected when omitted"
    )
    max_expansions: int = Field(default=120, ge=1)


class _Sampler:
    """Evaluates the signed, decreasing residual and keeps every sample."""

    def __init__(self, problem: MonotoneRootProblem):
        self.problem = problem
        self.sign = 1.0
        self.samples: List[Tuple[float, float]] = []

    def value(self, x: float) -> float:
        return self.sign * (self.raw(x) - self.problem.target)

    def raw(self, x: float) -> float:
        fx = float(self.problem.function(x))
        self.samples.append((x, fx))
        if not math.isfinite(fx):
            raise NumericalError(
                "monotone function returned a non-finite value", {"x": x, "f": fx}
            )
        return fx

    def unattainable(self, message: str) -> TargetUnattainableError:
        return TargetUnattainableError(
            message,
            samples=sorted(self.samples),
            details={"target": self.problem.target},
        )


def solve_monotone(problem: MonotoneRootProblem) -> float:
    """Bracket the target by geometric expansion, then refine with brentq."""
    sampler = _Sampler(problem)
    lo = max(problem.lower, problem.domain_min)
    hi = min(problem.upper, problem.domain_max)
    if not lo < hi:
        raise NumericalError("initial bracket is empty", {"lower": lo, "upper": hi})

    f_lo, f_hi = sampler.raw(lo), sampler.raw(hi)
    decreasing = problem.decreasing
    if decreasing is None:
        if f_lo == f_hi:
            if f_lo == problem.target:
                return lo
            raise sampler.unattainable("function is constant on the initial bracket")
        decreasing = f_hi < f_lo
    sampler.sign = 1.0 if decreasing else -1.0
    g_lo = sampler.sign * (f_lo - problem.target)
    g_hi = sampler.sign * (f_hi - problem.target)

    expansions = 0
    while g_hi > 0.0:
        expansions += 1
        width = hi - lo
        candidate = hi + 2.0 * width
        if math.isfinite(problem.domain_max):
            candidate = min(candidate, 0.5 * (hi + problem.domain_max))
        if expansions > problem.max_expansions or abs(candidate) > MAGNITUDE_CAP:
            raise sampler.unattainable("target not reached toward the upper end")
        lo, g_lo = hi, g_hi
        hi = candidate
        g_hi = sampler.value(hi)

    while g_lo < 0.0:
        expansions += 1
        width = hi - lo
        if math.isfinite(problem.domain_min):
            candidate = problem.domain_min + 0.5 * (lo - problem.domain_min)
        else:
            candidate = lo - 2.0 * width
        if (
            expansions > problem.max_expansions
            or abs(candidate) > MAGNITUDE_CAP
            or candidate <= problem.domain_min
        ):
            raise sampler.unattainable("target not reached toward the lower end")
        hi, g_hi = lo, g_lo
        lo = candidate
        g_lo = sampler.value(lo)

    logger.debug(f"Bracketed root in [{lo:.6g}, {hi:.6g}] after {expansions} steps")
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    return float(brentq(sampler.value, lo, hi, xtol=problem.tol, maxiter=500))
