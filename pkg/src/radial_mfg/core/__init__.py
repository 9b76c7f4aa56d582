"""Congestion mathematics and admissibility checks."""

from .admissibility import check_admissibility
from .congestion import (
    eval_Fj,
    invert_Fj,
    invert_Fj_array,
    sigma_exponent,
    unit_sphere_area,
)

__all__ = [
    "check_admissibility",
    "eval_Fj",
    "invert_Fj",
    "invert_Fj_array",
    "sigma_exponent",
    "unit_sphere_area",
]
