"""Duhamel integral, Picard iteration, and the local existence-time rule.

The integral equation u(t) = S(t) u0 - i*mu * int_0^t S(t-tau) N(u(tau)) dtau
is discretized on a uniform node grid t_0 < ... < t_M; the integral is the
composite trapezoid over the stored nodes, with the propagator applied as the
exact multiplier.  Iterating the map from the free evolution converges
geometrically once the horizon satisfies the smallness conditions measured by
``select_local_time``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import Field, Spectrum, conjugate_spectrum, to_field, to_spectrum
from .nonlinearity import power_nonlinearity
from .norms import energy_norm, wiener_norm, y_distance_spectra, y_norm_spectra
from .propagator import SimulationParams, apply_linear_flow, symbol
from .ensembles import make_rng, random_trajectory


class ConvergenceError(RuntimeError):
    """Picard iteration failed to converge; carries the distance history."""

    def __init__(self, message: str, distances: list[float]):
        super().__init__(message)
        self.distances = distances


@dataclass
class PicardState:
    """Node-sampled candidate trajectory plus contraction bookkeeping."""

    params: SimulationParams
    nodes: np.ndarray
    iterate: list[Spectrum]
    iteration_index: int = 0
    last_distance: float = math.inf
    radius_r: float = 0.0
    delta: float = 0.0
    constant_c: float = 1.0
    distance_history: list[float] = field(default_factory=list)
    converged: bool = False

    def trajectory(self) -> list[tuple[float, Spectrum]]:
        return list(zip(self.nodes.tolist(), self.iterate))

    def ratios(self) -> list[float]:
        d = self.distance_history
        return [d[i + 1] / d[i] for i in range(len(d) - 1) if d[i] > 0]


def nonlinear_spectra(
    spectra: list[Spectrum], params: SimulationParams, dealias: bool = True
) -> list[Spectrum]:
    """Coefficients of |u|^{2k} u at every node."""
    return [
        to_spectrum(power_nonlinearity(to_field(s), params.k, dealias=dealias))
        for s in spectra
    ]


def duhamel_integral(
    nodes: np.ndarray,
    spectra: list[Spectrum],
    params: SimulationParams,
    dealias: bool = True,
) -> list[Spectrum]:
    """Trapezoid quadrature of int_0^{t_n} S(t_n - tau) N(u(tau)) dtau per node."""
    if len(spectra) != len(nodes):
        raise ValueError("node and spectrum counts differ")
    grid = spectra[0].grid
    if any(s.grid != grid for s in spectra):
        raise ValueError("trajectory spectra live on inconsistent grids")
    nodes = np.asarray(nodes, dtype=float)
    m = len(nodes) - 1
    h = (nodes[-1] - nodes[0]) / m
    if not np.allclose(np.diff(nodes), h, rtol=1e-9, atol=1e-15):
        raise ValueError("duhamel quadrature requires uniform nodes")
    nl = [s.coeffs for s in nonlinear_spectra(spectra, params, dealias=dealias)]
    # Trapezoid over node i with target t_n, propagated by the exact
    # multiplier: D_n = h * (G_n - P^n N_0 / 2 - N_n / 2) with the running sum
    # G_n = exp(-i h sigma) G_{n-1} + N_n, G_0 = N_0.  O(M) instead of O(M^2).
    step_phase = np.exp(-1j * h * symbol(grid))
    out: list[Spectrum] = [Spectrum(grid, np.zeros(grid.shape, dtype=np.complex128))]
    running = nl[0].copy()
    phase_n = np.ones(grid.shape, dtype=np.complex128)
    for n in range(1, m + 1):
        running = step_phase * running + nl[n]
        phase_n = phase_n * step_phase
        out.append(Spectrum(grid, h * (running - 0.5 * phase_n * nl[0] - 0.5 * nl[n])))
    return out


def phi_map(
    nodes: np.ndarray,
    spectra: list[Spectrum],
    u0: Spectrum,
    params: SimulationParams,
    dealias: bool = True,
) -> list[Spectrum]:
    """One application of the integral-equation map at every node."""
    if u0.grid != spectra[0].grid:
        raise ValueError("initial data and trajectory grids differ")
    duh = duhamel_integral(nodes, spectra, params, dealias=dealias)
    out = []
    for t, d in zip(nodes, duh):
        free = apply_linear_flow(u0, float(t))
        out.append(Spectrum(u0.grid, free.coeffs - 1j * params.mu * d.coeffs))
    return out


def duhamel_apply(state: PicardState, u0: Spectrum) -> list[Spectrum]:
    """Map the state's current iterate through the integral-equation map."""
    return phi_map(state.nodes, state.iterate, u0, state.params)


def select_local_time(
    u0_energy: float, u0_wiener: float, c: float, k: int, r_floor: float = 1e-12
) -> tuple[float, float, float]:
    """Existence-time rule: r = 6*delta and the two smallness conditions.

    delta = max(energy norm, coefficient l1 norm) of the data; the horizon is
    the largest T with 3*C*T*r^p <= r/2 and 6*C*T*(2k+1)^2*r^{2k} <= 1.
    Returns (r, delta, t_max).
    """
    if c <= 0:
        raise ValueError(f"constant c must be positive, got {c}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    delta = max(u0_energy, u0_wiener)
    if not np.isfinite(delta) or delta < 0:
        raise ValueError(f"data norms must be finite and nonnegative, got {delta}")
    r = max(6.0 * delta, r_floor)
    p = 2 * k + 1
    t_ball = r / (6.0 * c * r**p)
    t_contract = 1.0 / (6.0 * c * (2 * k + 1) ** 2 * r ** (2 * k))
    return r, delta, min(t_ball, t_contract)


def picard_solve(
    u0: Spectrum,
    params: SimulationParams,
    nodes_m: int,
    tol: float,
    max_iter: int,
    constant_c: float = 1.0,
    initial: str = "free",
    direction: int = 1,
    dealias: bool = True,
) -> PicardState:
    """Iterate the integral-equation map to its fixed point on [0, T].

    ``direction=-1`` solves the negative-time branch through the conjugation
    symmetry u(-t) = conj(v(t)) where v solves the same equation from
    conjugated data; the returned nodes then represent |t|.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if nodes_m < 2:
        raise ValueError(f"nodes_m must be >= 2, got {nodes_m}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    if direction not in (1, -1):
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    if direction == -1:
        u0 = conjugate_spectrum(u0)

    T = params.horizon
    nodes = np.linspace(0.0, T, nodes_m + 1)
    delta = max(energy_norm(u0), wiener_norm(u0))
    r = 6.0 * delta

    if initial == "free":
        iterate = [apply_linear_flow(u0, float(t)) for t in nodes]
    elif initial == "zero":
        z = np.zeros(u0.grid.shape, dtype=np.complex128)
        iterate = [Spectrum(u0.grid, z) for _ in nodes]
    else:
        raise ValueError(f"initial must be 'free' or 'zero', got {initial!r}")

    state = PicardState(
        params=params,
        nodes=nodes,
        iterate=iterate,
        radius_r=r,
        delta=delta,
        constant_c=constant_c,
    )
    for it in range(1, max_iter + 1):
        new = phi_map(nodes, state.iterate, u0, params, dealias=dealias)
        if not all(np.all(np.isfinite(s.coeffs.view(np.float64))) for s in new):
            raise ConvergenceError(
                f"iterate blew up (non-finite) at iteration {it}",
                state.distance_history,
            )
        dist = y_distance_spectra(new, state.iterate)
        state.iterate = new
        state.iteration_index = it
        state.last_distance = dist
        state.distance_history.append(dist)
        if dist < tol:
            state.converged = True
            return state
    raise ConvergenceError(
        f"no convergence within {max_iter} iterations (last distance "
        f"{state.last_distance:.3e}); the horizon may be too large, the grid too "
        f"coarse, or the data outside the contraction regime",
        state.distance_history,
    )


@dataclass(frozen=True)
class ContractionReport:
    """Measured contraction ratios of the integral-equation map on a ball."""

    horizon: float
    radius_r: float
    trials: int
    ratios: list[float]

    @property
    def max_ratio(self) -> float:
        return max(self.ratios)

    @property
    def mean_ratio(self) -> float:
        return float(np.mean(self.ratios))


def measure_contraction(
    u0: Spectrum,
    params: SimulationParams,
    nodes_m: int,
    trials: int,
    r: float,
    seed: int = 0,
    band: int = 8,
) -> ContractionReport:
    """Sample random trajectory pairs in the radius-r ball and measure how much
    the integral-equation map shrinks their Y-distance."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    grid = u0.grid
    nodes = np.linspace(0.0, params.horizon, nodes_m + 1)
    rng = make_rng(seed)
    ratios: list[float] = []
    while len(ratios) < trials:
        u = random_trajectory(grid, nodes_m + 1, rng, band=band, y_target=0.9 * r)
        v = random_trajectory(grid, nodes_m + 1, rng, band=band, y_target=0.9 * r)
        duv = y_distance_spectra(u, v)
        if duv < 1e-14:
            continue  # degenerate pair, resample
        pu = phi_map(nodes, u, u0, params)
        pv = phi_map(nodes, v, u0, params)
        ratios.append(y_distance_spectra(pu, pv) / duv)
    return ContractionReport(
        horizon=params.horizon, radius_r=r, trials=trials, ratios=ratios
    )
