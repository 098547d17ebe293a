"""The odd-power nonlinearity |u|^{2k} u and its exact gauge sub-flow.

|u|^{2k} u = u^{k+1} ubar^k is a polynomial of degree 2k+1 in (u, ubar), so
zero-padding the spectrum by a factor k+1 per axis before the pointwise power
makes the discrete product alias-free; truncating back to the original band
is then exact (aliased images of out-of-band content land outside the kept
band on the padded lattice).
"""

from __future__ import annotations

import numpy as np

from .grid import Field, pad_spectrum, to_field, to_spectrum, truncate_spectrum


def power_nonlinearity(f: Field, k: int, dealias: bool = True) -> Field:
    """Pointwise z -> |z|^{2k} z, alias-free when dealias is on."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not dealias:
        v = f.values
        return Field(f.grid, np.abs(v) ** (2 * k) * v)
    s = pad_spectrum(to_spectrum(f), k + 1)
    fine = to_field(s).values
    cubed = np.abs(fine) ** (2 * k) * fine
    back = truncate_spectrum(to_spectrum(Field(s.grid, cubed)), f.grid)
    return to_field(back)


def nonlinear_flow(f: Field, mu: int, k: int, t: float) -> Field:
    """Exact gauge flow z -> z * exp(-i mu |z|^{2k} t); |z| is pointwise conserved."""
    if not np.isfinite(t):
        raise ValueError(f"flow time must be finite, got {t!r}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    v = f.values
    return Field(f.grid, v * np.exp(-1j * mu * t * np.abs(v) ** (2 * k)))
