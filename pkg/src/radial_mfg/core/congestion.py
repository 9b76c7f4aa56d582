"""Congestion map F_j, its inverse and dimension constants."""

import logging
import math

import numpy as np
from scipy.special import gamma

from ..exceptions import (
    BracketExpansionError,
    ConvergenceError,
    DomainError,
    NoPositiveRootError,
    UnrepresentableRootError,
)
from ..models.problem import CongestionCurve

logger = logging.getLogger(__name__)

_LN2 = math.log(2.0)
_STEP_TOL = 4.0 * np.finfo(float).eps
_LOG_TINY = math.log(np.finfo(float).tiny)
_LOG_HUGE = math.log(np.finfo(float).max)


def eval_Fj(curve: CongestionCurve, t):
    """F_j(t) = (j**2/2) t**((alpha-2)/beta) - t for t > 0.

    Accepts scalars or arrays; raises DomainError if any t <= 0.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(~(t_arr > 0.0)):
        raise DomainError("F_j is defined for t > 0 only", {"t": t})
    value = 0.5 * curve.j * curve.j * t_arr**curve.power - t_arr
    return float(value) if np.ndim(t) == 0 else value


def _f_log(curve: CongestionCurve, s: np.ndarray) -> np.ndarray:
    return 0.5 * curve.j * curve.j * np.exp(curve.power * s) - np.exp(s)


def _df_log(curve: CongestionCurve, s: np.ndarray) -> np.ndarray:
    """d/ds F_j(e**s); strictly negative."""
    return 0.5 * curve.j * curve.j * curve.power * np.exp(curve.power * s) - np.exp(s)


def invert_Fj_array(
    curve: CongestionCurve,
    y,
    tol: float = 1e-10,
    max_expansions: int = 2100,
    max_iterations: int = 200,
) -> np.ndarray:
    """Solve F_j(t) = y elementwise for t > 0.

    Brackets each root by doubling/halving from the closed-form zero t*
    and then runs Newton in s = log t, falling back to bisection whenever
    the Newton iterate leaves the bracket.
    """
    y = np.array(y, dtype=float, ndmin=1)
    if not np.all(np.isfinite(y)):
        raise DomainError("F_j can only be inverted at finite values")

    if curve.j == 0.0:
        if np.any(y >= 0.0):
            raise NoPositiveRootError(
                "F_0(t) = -t has no positive root for y >= 0",
                {"y_max": float(np.max(y))},
            )
        return -y

    start = math.log(curve.zero)
    lo = np.full(y.shape, start)
    hi = np.full(y.shape, start)
    below = y < 0.0
    moved = np.zeros(y.shape, dtype=bool)

    for _ in range(max_expansions):
        grow = below & (_f_log(curve, hi) > y)
        shrink = ~below & (_f_log(curve, lo) < y)
        if not (grow.any() or shrink.any()):
            break
        hi[grow] += _LN2
        lo[shrink] -= _LN2
        moved |= grow | shrink
        if np.any(lo < _LOG_TINY) or np.any(hi > _LOG_HUGE):
            outside = (lo < _LOG_TINY) | (hi > _LOG_HUGE)
            raise UnrepresentableRootError(
                "root of F_j(t) = y is not a representable positive double",
                {"y": float(y[np.flatnonzero(outside)[0]])},
            )
    else:
        raise BracketExpansionError(
            "could not bracket F_j(t) = y", {"iterations": max_expansions}
        )

    # the previous end point still straddles the root
    lo = np.where(below & moved, hi - _LN2, lo)
    hi = np.where(~below & moved, lo + _LN2, hi)

    s = 0.5 * (lo + hi)
    for iteration in range(max_iterations):
        fs = _f_log(curve, s) - y
        lo = np.where(fs > 0.0, s, lo)
        hi = np.where(fs < 0.0, s, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = s - fs / _df_log(curve, s)
        outside = ~np.isfinite(newton) | (newton <= lo) | (newton >= hi)
        s_next = np.where(outside, 0.5 * (lo + hi), newton)
        s_next = np.where(fs == 0.0, s, s_next)
        step = np.abs(s_next - s)
        s = s_next
        if np.all(step <= _STEP_TOL * np.maximum(1.0, np.abs(s))):
            break
    else:
        raise ConvergenceError(
            "F_j inversion did not converge", details={"iterations": max_iterations}
        )

    t = np.exp(s)
    residual = np.abs(_f_log(curve, s) - y)
    worst = float(np.max(residual / (1.0 + np.abs(y))))
    if worst > tol:
        raise ConvergenceError(
            f"F_j inversion residual {worst:.3e} exceeds tol {tol:.1e}",
            details={"residual": worst, "tol": tol},
        )
    logger.debug(f"Inverted F_j at {y.size} values, worst residual {worst:.3e}")
    return t


def invert_Fj(curve: CongestionCurve, y: float, tol: float = 1e-10) -> float:
    """Unique t > 0 with |F_j(t) - y| <= tol * (1 + |y|)."""
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    return float(invert_Fj_array(curve, y, tol)[0])


def sigma_exponent(d: int, alpha: float, beta: float) -> float:
    """sigma = 2 beta (d-1) / (2 + beta - alpha)."""
    denominator = 2.0 + beta - alpha
    if denominator == 0.0:
        raise DomainError("2 + beta - alpha must be nonzero")
    return 2.0 * beta * (d - 1) / denominator


def unit_sphere_area(d: int) -> float:
    """|dB_1| = 2 pi**(d/2) / Gamma(d/2)."""
    if d < 1:
        raise DomainError("dimension must be at least 1", {"d": d})
    return float(2.0 * math.pi ** (0.5 * d) / gamma(0.5 * d))
