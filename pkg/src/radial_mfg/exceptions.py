"""Exceptions raised by radial-mfg."""

from typing import Any, Dict, Optional


class RadialMFGError(Exception):
    """Base exception for radial-mfg errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class DomainError(RadialMFGError, ValueError):
    """An input lies outside the domain of the operation."""

    pass


class NoPositiveRootError(DomainError):
    """F_0(t) = y has no positive root (y >= 0)."""

    pass


class UnrepresentableRootError(DomainError):
    """The root of F_j(t) = y lies outside the range of positive doubles."""

    pass


class GridError(DomainError):
    """Invalid grid bounds or samples that do not match a grid."""

    pass


class RegimeError(DomainError):
    """The requested solver does not apply to the (alpha, j) regime."""

    pass


class ConfigError(RadialMFGError):
    """Scenario configuration could not be read or validated."""

    pass


class NumericalError(RadialMFGError):
    """Numerical breakdown inside a solver."""

    pass


class BracketExpansionError(NumericalError):
    """Bracket expansion hit its iteration cap."""

    pass


class TargetUnattainableError(NumericalError):
    """A monotone function never reaches the target on its search region."""

    def __init__(self, message: str, samples=None, **kwargs):
        super().__init__(message, **kwargs)
        self.samples = samples or []


class ConvergenceError(NumericalError):
    """Iteration cap reached without meeting the tolerance."""

    def __init__(self, message: str, best_state=None, **kwargs):
        super().__init__(message, **kwargs)
        self.best_state = best_state


class SingularJacobianError(NumericalError):
    """Newton system could not be solved."""

    def __init__(self, message: str, node_index: Optional[int] = None, **kwargs):
        super().__init__(message, **kwargs)
        self.node_index = node_index


class PositivityBreakdownError(NumericalError):
    """The density could not be kept above the positivity floor."""

    pass


class ExportError(RadialMFGError):
    """An artifact could not be produced."""

    pass
