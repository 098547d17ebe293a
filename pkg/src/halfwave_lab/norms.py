"""Function-space norms on the periodic box.

Physical-space norms use the uniform quadrature weight dx*dy (rectangle rule,
spectrally accurate for smooth periodic integrands).  Spectral norms carry the
box-area factor A so that Parseval reads sum |u|^2 dx dy = A * sum |c|^2.

The coefficient l1 norm ("wiener") is the discrete stand-in for the L1 norm of
the Fourier transform; in this convention the embedding max|u| <= sum|c| and
the product inequality ||coef(fg)||_1 <= ||coef f||_1 ||coef g||_1 hold with
constant exactly one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .grid import Field, Spectrum, to_field


def l2_norm(f: Field) -> float:
    """(sum |u|^2 dx dy)^(1/2)."""
    g = f.grid
    return float(np.sqrt(np.sum(np.abs(f.values) ** 2) * g.dx * g.dy))


def lq_norm(f: Field, q: float) -> float:
    """(sum |u|^q dx dy)^(1/q); q = inf gives the sample maximum."""
    if q == math.inf:
        return linf_norm(f)
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    g = f.grid
    return float((np.sum(np.abs(f.values) ** q) * g.dx * g.dy) ** (1.0 / q))


def linf_norm(f: Field) -> float:
    """max over samples of |u|."""
    return float(np.max(np.abs(f.values)))


def sobolev_norm(s: Spectrum, s1: float, s2: float) -> float:
    """Anisotropic Sobolev norm with weights <xi>^s1 <eta>^s2, <z> = sqrt(1+z^2)."""
    xi, eta = s.grid.frequency_grids()
    w = (1.0 + xi**2) ** s1 * (1.0 + eta**2) ** s2
    return float(np.sqrt(s.grid.area * np.sum(w * np.abs(s.coeffs) ** 2)))


def energy_norm(s: Spectrum) -> float:
    """(A * sum (xi^2 + |eta| + 1) |c|^2)^(1/2): d/dx, |D_y|^(1/2), and mass terms."""
    xi, eta = s.grid.frequency_grids()
    w = xi**2 + np.abs(eta) + 1.0
    return float(np.sqrt(s.grid.area * np.sum(w * np.abs(s.coeffs) ** 2)))


def wiener_norm(s: Spectrum) -> float:
    """l1 norm of the Fourier coefficients."""
    return float(np.sum(np.abs(s.coeffs)))


@dataclass(frozen=True)
class NormReport:
    """Measured norms of one snapshot."""

    time: float
    l2: float
    linf: float
    energy_norm: float
    wiener: float
    sobolev: dict = field(default_factory=dict)  # keyed by (s1, s2)


def norm_report(
    time: float,
    f: Field,
    s: Spectrum | None = None,
    sobolev_pairs: Sequence[tuple[float, float]] = (),
) -> NormReport:
    from .grid import to_spectrum

    if s is None:
        s = to_spectrum(f)
    sob = {(s1, s2): sobolev_norm(s, s1, s2) for (s1, s2) in sobolev_pairs}
    return NormReport(
        time=float(time),
        l2=l2_norm(f),
        linf=linf_norm(f),
        energy_norm=energy_norm(s),
        wiener=wiener_norm(s),
        sobolev=sob,
    )


# ---------------------------------------------------------------------------
# Trajectory (time-supremum) norms
# ---------------------------------------------------------------------------

TrajectoryNode = tuple[float, Field, Spectrum]


def y_norm(trajectory: Iterable[TrajectoryNode]) -> float:
    """sup-in-time energy norm + sup L-infinity norm + sup coefficient l1 norm.

    The three suprema are taken separately over the nodes, then summed.
    """
    nodes = list(trajectory)
    if not nodes:
        raise ValueError("y_norm of an empty trajectory")
    grid = nodes[0][1].grid
    e = li = w = 0.0
    for _, f, s in nodes:
        if f.grid != grid or s.grid != grid:
            raise ValueError("trajectory nodes live on inconsistent grids")
        e = max(e, energy_norm(s))
        li = max(li, linf_norm(f))
        w = max(w, wiener_norm(s))
    return e + li + w


def y_norm_spectra(spectra: Sequence[Spectrum]) -> float:
    """y_norm of a node-sampled trajectory given only its spectra."""
    return y_norm((0.0, to_field(s), s) for s in spectra)


def y_distance_spectra(a: Sequence[Spectrum], b: Sequence[Spectrum]) -> float:
    """Discrete Y-distance: y_norm of the node-wise difference."""
    if len(a) != len(b):
        raise ValueError("trajectories have different node counts")
    diffs = [Spectrum(sa.grid, sa.coeffs - sb.coeffs) for sa, sb in zip(a, b)]
    return y_norm_spectra(diffs)
