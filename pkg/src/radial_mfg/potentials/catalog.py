"""Evaluation of catalog potentials."""

from typing import List, Sequence, Tuple

import numpy as np

from ..exceptions import DomainError
from ..models.potential import PotentialKind, PotentialSpec


def _sine(spec: PotentialSpec, r: np.ndarray) -> np.ndarray:
    return np.sin(spec.frequency * np.pi * (r + spec.phase))


def _evaluate(spec: PotentialSpec, r: np.ndarray) -> np.ndarray:
    kind = spec.kind
    if kind == PotentialKind.GAUSSIAN_SINE:
        envelope = np.exp(-0.5 * (r / spec.scale) ** 2)
        return spec.amplitude * envelope * _sine(spec, r)
    if kind == PotentialKind.POWER_SINE:
        return spec.amplitude * (1.0 + r) ** (-spec.power) * _sine(spec, r)
    if kind == PotentialKind.GAUSSIAN:
        return spec.amplitude * np.exp(-0.5 * (r / spec.scale) ** 2)
    if kind == PotentialKind.CONSTANT:
        return np.full_like(r, spec.amplitude)
    if kind == PotentialKind.TABULATED:
        return np.interp(r, spec.radii, spec.values)
    total = np.full_like(r, spec.offset)
    for weight, component in zip(spec.weights, spec.components):
        total = total + weight * _evaluate(component, r)
    return total


def eval_potential(spec: PotentialSpec, r):
    """V(r) for a scalar or an array of radii r >= 0."""
    radii = np.asarray(r, dtype=float)
    if np.any(radii < 0.0) or not np.all(np.isfinite(radii)):
        raise DomainError("potentials are evaluated at finite r >= 0")
    values = _evaluate(spec, radii)
    return float(values) if np.ndim(r) == 0 else values


def potential_decay_profile(
    spec: PotentialSpec, sigma: float, ladder: Sequence[float]
) -> List[Tuple[float, float]]:
    """Samples (r, V(r) * r**sigma) along a ladder of radii."""
    radii = np.asarray(ladder, dtype=float)
    if radii.size == 0:
        raise DomainError("decay ladder must not be empty")
    if np.any(radii <= 0.0):
        raise DomainError("decay ladder radii must be positive")
    products = eval_potential(spec, radii) * radii**sigma
    return [(float(r), float(p)) for r, p in zip(radii, products)]
