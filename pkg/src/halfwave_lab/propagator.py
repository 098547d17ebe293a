"""The exact linear flow exp{it(d^2/dx^2 - |D_y|)} and related Fourier multipliers.

The flow acts diagonally on Fourier coefficients through the symbol
sigma(xi, eta) = xi^2 + |eta|; each coefficient picks up the unit-modulus
phase exp(-i t sigma), so every weighted l2 sum and the coefficient l1 norm
are preserved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec, Spectrum


@dataclass(frozen=True)
class SimulationParams:
    """Equation parameters: sign mu = +-1, power p = 2k+1, time horizon T."""

    mu: int
    k: int
    horizon: float = 0.0

    def __post_init__(self):
        if self.mu not in (1, -1):
            raise ValueError(f"mu must be +1 or -1, got {self.mu!r}")
        if not isinstance(self.k, (int, np.integer)) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        if not np.isfinite(self.horizon) or self.horizon < 0:
            raise ValueError(f"horizon must be finite and >= 0, got {self.horizon!r}")

    @property
    def p(self) -> int:
        return 2 * self.k + 1


def symbol(g: GridSpec) -> np.ndarray:
    """sigma_{j,m} = xi_j^2 + |eta_m| on the (ny, nx) coefficient layout."""
    xi, eta = g.frequency_grids()
    return xi**2 + np.abs(eta)


def apply_linear_flow(s: Spectrum, t: float) -> Spectrum:
    """c_{j,m} -> exp(-i t sigma_{j,m}) c_{j,m}."""
    if not np.isfinite(t):
        raise ValueError(f"flow time must be finite, got {t!r}")
    if t == 0.0:
        return s
    return Spectrum(s.grid, s.coeffs * np.exp(-1j * t * symbol(s.grid)))


_MULTIPLIERS = ("dx", "abs_dy", "sqrt_abs_dy")


def apply_multiplier(s: Spectrum, which: str) -> Spectrum:
    """Apply d/dx (i*xi), |D_y| (|eta|), or |D_y|^(1/2) (|eta|^(1/2))."""
    xi, eta = s.grid.frequency_grids()
    if which == "dx":
        mult = 1j * xi
    elif which == "abs_dy":
        mult = np.abs(eta)
    elif which == "sqrt_abs_dy":
        mult = np.sqrt(np.abs(eta))
    else:
        raise ValueError(f"unknown multiplier {which!r}, expected one of {_MULTIPLIERS}")
    return Spectrum(s.grid, s.coeffs * mult)
