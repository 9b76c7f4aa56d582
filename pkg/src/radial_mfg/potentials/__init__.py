"""Radial potential catalog."""

from .catalog import eval_potential, potential_decay_profile

__all__ = ["eval_potential", "potential_decay_profile"]
