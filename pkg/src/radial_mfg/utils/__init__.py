"""Utility functions for radial-mfg."""

from .formatting import format_float, format_H, format_norm, truncate_string
from .validation import validate_first_order, validate_second_order

__all__ = [
    "format_H",
    "format_float",
    "format_norm",
    "truncate_string",
    "validate_first_order",
    "validate_second_order",
]
