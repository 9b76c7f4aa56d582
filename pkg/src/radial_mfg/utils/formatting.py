"""Formatting utilities."""

from typing import Optional

import numpy as np

SIGNIFICANT_DIGITS = 12


def format_float(value: Optional[float], digits: int = SIGNIFICANT_DIGITS) -> str:
    """Decimal (never scientific) notation with `digits` significant digits."""
    if value is None:
        return ""
    return np.format_float_positional(
        float(value), precision=digits, unique=False, fractional=False, trim="-"
    )


def format_H(value: Optional[float], decimals: int = 4) -> str:
    """Effective Hamiltonian for display."""
    if value is None:
        return "N/A"
    return f"{value:.{decimals}f}"


def format_norm(value: Optional[float]) -> str:
    """Residual or error norm for display."""
    if value is None:
        return "N/A"
    return f"{value:.2e}"


def truncate_string(text: Optional[str], max_length: int = 60) -> str:
    """Truncate string for display."""
    if not text:
        return ""

    if len(text) <= max_length:
        return text

    return text[: max_length - 3] + "..."
