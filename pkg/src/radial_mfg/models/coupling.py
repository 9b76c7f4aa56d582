"""Coupling g(m) and its antiderivatives."""

from enum import Enum
from typing import List

import numpy as np
from pydantic import Field, model_validator
from scipy.integrate import cumulative_trapezoid

from .base import BaseModel


class CouplingKind(str, Enum):
    POWER = "power"
    TABULATED = "tabulated"


class CouplingSpec(BaseModel):
    """Monotone coupling: g(m) = m**beta or a table (m_i, g_i)."""

    kind: CouplingKind = Field(default=CouplingKind.POWER)
    beta: float = Field(default=1.0, gt=0.0)
    densities: List[float] = Field(default_factory=list)
    values: List[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_table(self):
        if self.kind == CouplingKind.TABULATED:
            if len(self.densities) < 2 or len(self.densities) != len(self.values):
                raise ValueError("tabulated couplings need >= 2 matching samples")
            if self.densities[0] < 0.0:
                raise ValueError("tabulated densities must be nonnegative")
            if any(b <= a for a, b in zip(self.densities, self.densities[1:])):
                raise ValueError("tabulated densities must be strictly increasing")
            if any(b < a for a, b in zip(self.values, self.values[1:])):
                raise ValueError("tabulated couplings must be nondecreasing")
        return self

    @property
    def is_power(self) -> bool:
        return self.kind == CouplingKind.POWER

    def g(self, m):
        """Coupling value g(m)."""
        m = np.asarray(m, dtype=float)
        if self.is_power:
            return m**self.beta
        # clamped outside the table
        return np.interp(m, self.densities, self.values)

    def dg(self, m):
        """Derivative g'(m); zero outside a tabulated range."""
        m = np.asarray(m, dtype=float)
        if self.is_power:
            return self.beta * m ** (self.beta - 1.0)
        dens = np.asarray(self.densities)
        slopes = np.diff(self.values) / np.diff(dens)
        index = np.clip(np.searchsorted(dens, m, side="right") - 1, 0, len(slopes) - 1)
        inside = (m >= dens[0]) & (m <= dens[-1])
        return np.where(inside, slopes[index], 0.0)

    def G(self, m):
        """Antiderivative of g with G(0) = 0."""
        m = np.asarray(m, dtype=float)
        if self.is_power:
            return m ** (self.beta + 1.0) / (self.beta + 1.0)
        dens = np.asarray(self.densities)
        vals = np.asarray(self.values)
        slopes = np.diff(vals) / np.diff(dens)
        nodes = vals[0] * dens[0] + np.concatenate(
            ([0.0], np.cumsum(0.5 * (vals[1:] + vals[:-1]) * np.diff(dens)))
        )
        k = np.clip(np.searchsorted(dens, m, side="right") - 1, 0, len(slopes) - 1)
        s = m - dens[k]
        inner = nodes[k] + vals[k] * s + 0.5 * slopes[k] * s * s
        below = vals[0] * m
        above = nodes[-1] + vals[-1] * (m - dens[-1])
        return np.where(m < dens[0], below, np.where(m > dens[-1], above, inner))

    def G1_integrand(self, rho, alpha: float):
        """rho -> g(rho**(2/(2a+1))) * rho**(1/(2a+1))."""
        rho = np.asarray(rho, dtype=float)
        c = 2.0 / (2.0 * alpha + 1.0)
        return self.g(rho**c) * rho ** (0.5 * c)

    def G1(self, rho, alpha: float):
        """Antiderivative of `G1_integrand` with G1(0) = 0.

        Uses G1(rho) = ((2a+1)/2) * integral_0^{rho**(2/(2a+1))} g(m) m**a dm.
        The upper limits are mesh nodes, so no interpolation error enters.
        """
        rho = np.asarray(rho, dtype=float)
        if self.is_power:
            k = (2.0 * self.beta + 1.0) / (2.0 * alpha + 1.0)
            return rho ** (k + 1.0) / (k + 1.0)
        upper = rho ** (2.0 / (2.0 * alpha + 1.0))
        top = float(np.max(upper, initial=0.0))
        mesh = np.unique(
            np.concatenate(
                (
                    np.linspace(0.0, top, _G1_MESH),
                    [x for x in self.densities if x <= top],
                    upper.ravel(),
                )
            )
        )
        running = cumulative_trapezoid(self.g(mesh) * mesh**alpha, mesh, initial=0.0)
        return 0.5 * (2.0 * alpha + 1.0) * np.interp(upper, mesh, running)


_G1_MESH = 8193
