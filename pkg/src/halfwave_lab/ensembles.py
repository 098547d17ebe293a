"""Seeded random ensembles for estimate certification.

All randomness flows through a 64-bit counter-based generator (Philox4x64)
seeded explicitly, so a (seed, draw-order) pair reproduces the same ensemble
on every platform.
"""

from __future__ import annotations

import numpy as np

from .grid import GridSpec, Spectrum
from .norms import y_norm_spectra


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator; same seed => same stream everywhere."""
    return np.random.Generator(np.random.Philox(seed))


def random_band_limited_spectrum(
    grid: GridSpec, rng: np.random.Generator, band: int = 8
) -> Spectrum:
    """Random coefficients on modes |j|, |m| <= band with Gaussian decay.

    The band is kept well below the Nyquist mode so conjugation and products
    stay exactly representable after dealiasing.
    """
    band = min(band, grid.nx // 2 - 1, grid.ny // 2 - 1)
    j, m = grid.mode_numbers()
    jj = np.broadcast_to(j[None, :], grid.shape)
    mm = np.broadcast_to(m[:, None], grid.shape)
    mask = (np.abs(jj) <= band) & (np.abs(mm) <= band)
    c = np.zeros(grid.shape, dtype=np.complex128)
    n = int(mask.sum())
    raw = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    decay = np.exp(-(jj[mask] ** 2 + mm[mask] ** 2) / (2.0 * max(band, 1) ** 2))
    c[mask] = raw * decay
    return Spectrum(grid, c)


def random_trajectory(
    grid: GridSpec,
    n_nodes: int,
    rng: np.random.Generator,
    band: int = 8,
    y_target: float | None = None,
) -> list[Spectrum]:
    """Independent random spectra per node, optionally rescaled to a Y-norm."""
    traj = [random_band_limited_spectrum(grid, rng, band) for _ in range(n_nodes)]
    if y_target is not None:
        y = y_norm_spectra(traj)
        if y > 0:
            scale = y_target / y
            traj = [Spectrum(grid, s.coeffs * scale) for s in traj]
    return traj
