"""Admissibility of a problem: exponent window, potential decay, domain."""

import logging
from typing import List, Optional, Tuple

import numpy as np

from ..models.options import SolverOptions
from ..models.problem import ProblemSpec
from ..models.solution import AdmissibilityReport, DecayCheck
from ..potentials import potential_decay_profile
from .congestion import sigma_exponent

logger = logging.getLogger(__name__)

LADDER_EXPONENTS = range(-20, 21)
SLOPE_SAMPLES = 8


def _decay_check(
    samples: List[Tuple[float, float]], end: str, threshold: float
) -> DecayCheck:
    """Decide whether |V r**sigma| tends to zero at one end of the ladder.

    `samples` are ordered outermost first.
    """
    outer = samples[:SLOPE_SAMPLES]
    radii = np.array([r for r, _ in outer])
    magnitudes = np.abs(np.array([p for _, p in outer]))
    outermost = float(magnitudes[0])

    slope: Optional[float] = None
    positive = magnitudes > 0.0
    if positive.sum() >= 2:
        slope = float(
            np.polyfit(np.log(radii[positive]), np.log(magnitudes[positive]), 1)[0]
        )

    if outermost <= threshold:
        decays = True
    elif slope is None:
        decays = True
    elif end == "origin":
        decays = slope > 0.0
    else:
        decays = slope < 0.0
    return DecayCheck(
        end=end, slope=slope, outermost=outermost, decays=decays, samples=samples
    )


def check_admissibility(
    spec: ProblemSpec, options: Optional[SolverOptions] = None
) -> AdmissibilityReport:
    """Report on the hypotheses under which the first-order solution exists.

    Never raises on a violated hypothesis; every finding is a report field
    and a warning string.
    """
    options = options or SolverOptions()
    sigma = sigma_exponent(spec.d, spec.alpha, spec.beta)
    lower = 2.0 / spec.d
    upper = min(2.0, 2.0 / spec.d + spec.beta)
    window = lower < spec.alpha < upper

    ladder = [options.length_scale * 2.0**k for k in LADDER_EXPONENTS]
    profile = potential_decay_profile(spec.potential, sigma, ladder)
    origin = _decay_check(profile, "origin", options.decay_threshold)
    infinity = _decay_check(profile[::-1], "infinity", options.decay_threshold)

    current_ok = not (spec.is_full_space and spec.j != 0.0)

    warnings = []
    if not window:
        warnings.append(
            f"alpha={spec.alpha:g} outside the exponent window "
            f"({lower:g}, {upper:g})"
        )
    for check in (origin, infinity):
        if not check.decays:
            warnings.append(
                f"V(r) r^sigma does not decay toward the {check.end} "
                f"(slope {check.slope:.3g}, |value| {check.outermost:.3g})"
            )
    if not current_ok:
        warnings.append("full_space problems only admit the current j = 0")

    for message in warnings:
        logger.warning(message)

    return AdmissibilityReport(
        d=spec.d,
        alpha=spec.alpha,
        beta=spec.beta,
        j=spec.j,
        sigma=sigma,
        window_lower=lower,
        window_upper=upper,
        exponent_window=window,
        decay_origin=origin,
        decay_infinity=infinity,
        current_compatible=current_ok,
        warnings=warnings,
    )
