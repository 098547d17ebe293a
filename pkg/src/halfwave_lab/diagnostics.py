"""Conserved quantities and numerical certification of the a-priori estimates.

Each check produces an EstimateReport: measured left-hand side, the claimed
right-hand side, their margin, and the smallest constant that would make the
bound hold for this witness.  A negative margin is recorded, never raised;
pass/fail policy belongs to the caller (the acceptance suite).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .grid import Field, GridSpec, Spectrum, to_field
from .norms import energy_norm, linf_norm, lq_norm, wiener_norm, y_norm_spectra
from .picard import duhamel_integral, nonlinear_spectra
from .propagator import SimulationParams, apply_linear_flow, apply_multiplier
from .ensembles import make_rng, random_trajectory

Trajectory = Sequence[tuple[float, Spectrum]]


@dataclass(frozen=True)
class EstimateReport:
    """One certified inequality: lhs <= rhs up to the recorded margin."""

    estimate_id: str
    lhs: float
    rhs: float
    witness: str
    empirical_constant: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


def mass(f: Field) -> float:
    """sum |u|^2 dx dy."""
    return float(np.sum(np.abs(f.values) ** 2) * f.grid.dx * f.grid.dy)


def energy(f: Field, params: SimulationParams) -> float:
    """(1/2) * (||d/dx u||^2 + <|D_y|u, u>) + mu/(p+1) * ||u||_{p+1}^{p+1}.

    Kinetic terms are computed spectrally; the potential term by quadrature.
    The potential enters with the sign that makes the functional a constant
    of the motion (defocusing mu = +1 gives a positive potential term).
    """
    from .grid import to_spectrum

    s = to_spectrum(f)
    xi, eta = s.grid.frequency_grids()
    kinetic = 0.5 * s.grid.area * float(
        np.sum((xi**2 + np.abs(eta)) * np.abs(s.coeffs) ** 2)
    )
    p = params.p
    potential = params.mu / (p + 1) * lq_norm(f, p + 1) ** (p + 1)
    return kinetic + potential


def _split_nodes(traj: Trajectory) -> tuple[np.ndarray, list[Spectrum]]:
    if not traj:
        raise ValueError("empty trajectory")
    times = np.array([t for t, _ in traj], dtype=float)
    spectra = [s for _, s in traj]
    return times, spectra


def _require_ball(spectra: list[Spectrum], r: float, slack: float = 1e-9) -> None:
    y = y_norm_spectra(spectra)
    if y > r * (1.0 + slack) + slack:
        raise ValueError(f"trajectory has Y-norm {y:.6g} outside the radius-{r:.6g} ball")


def check_linear_estimate(u0: Spectrum, t_grid: Sequence[float]) -> EstimateReport:
    """Free-evolution bound: Y-norm of {S(t_n) u0} against energy + 2 * l1."""
    free = [apply_linear_flow(u0, float(t)) for t in t_grid]
    lhs = y_norm_spectra(free)
    rhs = energy_norm(u0) + 2.0 * wiener_norm(u0)
    return EstimateReport(
        estimate_id="linear",
        lhs=lhs,
        rhs=rhs,
        witness=f"free trajectory, {len(free)} nodes",
        empirical_constant=lhs / rhs if rhs > 0 else 0.0,
    )


def check_duhamel_estimates(
    u_traj: Trajectory,
    params: SimulationParams,
    r: float,
    c_energy: float = 1.0,
) -> list[EstimateReport]:
    """Bound the three norms of the Duhamel term by C*T*r^p.

    The L-infinity and coefficient-l1 chains hold with C = 1 in the discrete
    convention; the energy chain carries the supplied (calibrated) constant.
    """
    nodes, spectra = _split_nodes(u_traj)
    _require_ball(spectra, r)
    T = float(nodes[-1])
    duh = duhamel_integral(nodes, spectra, params)
    lhs_e = max(energy_norm(d) for d in duh)
    lhs_inf = max(linf_norm(to_field(d)) for d in duh)
    lhs_l1 = max(wiener_norm(d) for d in duh)
    rp = r**params.p
    denom = T * rp if T > 0 else 0.0

    def report(eid: str, lhs: float, c: float) -> EstimateReport:
        return EstimateReport(
            estimate_id=eid,
            lhs=lhs,
            rhs=c * T * rp,
            witness=f"trajectory in B_{r:.6g}, T={T:.6g}, {len(nodes)} nodes",
            empirical_constant=lhs / denom if denom > 0 else 0.0,
        )

    return [
        report("duhamel_E", lhs_e, c_energy),
        report("duhamel_Linf", lhs_inf, 1.0),
        report("duhamel_L1", lhs_l1, 1.0),
    ]


def check_lipschitz_estimates(
    u_traj: Trajectory,
    v_traj: Trajectory,
    params: SimulationParams,
    r: float,
) -> list[EstimateReport]:
    """Bound the nonlinear difference |u|^{2k}u - |v|^{2k}v node-wise.

    The coefficient-l1 and L-infinity chains carry the constant (2k+1)*r^{2k}
    against the l1 distance; the energy chain carries (2k+1)^2*r^{2k} against
    the max of the energy and L-infinity distances.
    """
    nodes_u, su = _split_nodes(u_traj)
    nodes_v, sv = _split_nodes(v_traj)
    if len(su) != len(sv):
        raise ValueError("trajectories have different node counts")
    _require_ball(su, r)
    _require_ball(sv, r)
    k = params.k
    nu = nonlinear_spectra(su, params)
    nv = nonlinear_spectra(sv, params)
    diff_nl = [Spectrum(a.grid, a.coeffs - b.coeffs) for a, b in zip(nu, nv)]
    diff = [Spectrum(a.grid, a.coeffs - b.coeffs) for a, b in zip(su, sv)]

    lhs_e = max(energy_norm(d) for d in diff_nl)
    lhs_inf = max(linf_norm(to_field(d)) for d in diff_nl)
    lhs_l1 = max(wiener_norm(d) for d in diff_nl)
    dist_e = max(energy_norm(d) for d in diff)
    dist_inf = max(linf_norm(to_field(d)) for d in diff)
    dist_l1 = max(wiener_norm(d) for d in diff)

    r2k = r ** (2 * k)
    wit = f"pair in B_{r:.6g}, {len(su)} nodes"

    def report(eid: str, lhs: float, const: float, dist: float) -> EstimateReport:
        denom = r2k * dist
        return EstimateReport(
            estimate_id=eid,
            lhs=lhs,
            rhs=const * r2k * dist,
            witness=wit,
            empirical_constant=lhs / denom if denom > 0 else 0.0,
        )

    return [
        report("lipschitz_E", lhs_e, (2 * k + 1) ** 2, max(dist_e, dist_inf)),
        report("lipschitz_Linf", lhs_inf, 2 * k + 1, dist_l1),
        report("lipschitz_wiener", lhs_l1, 2 * k + 1, dist_l1),
    ]


def calibrate_energy_constant(
    grid: GridSpec,
    params: SimulationParams,
    nodes_m: int,
    trials: int,
    r: float,
    seed: int = 0,
    band: int = 8,
) -> dict:
    """Empirical constant of the energy-chain Duhamel bound over an ensemble.

    For each random trajectory, the per-witness constant is
    sup_n ||D_n||_E / (T * ||u||_Linf^{p-1} * sup_n ||u||_E); the 95th
    percentile is the value ``select_local_time`` should consume, the max is
    the conservative worst case.
    """
    if params.horizon <= 0:
        raise ValueError("calibration needs a positive horizon")
    rng = make_rng(seed)
    nodes = np.linspace(0.0, params.horizon, nodes_m + 1)
    constants = []
    for _ in range(trials):
        traj = random_trajectory(grid, nodes_m + 1, rng, band=band, y_target=0.9 * r)
        duh = duhamel_integral(nodes, traj, params)
        lhs = max(energy_norm(d) for d in duh)
        sup_e = max(energy_norm(s) for s in traj)
        sup_inf = max(linf_norm(to_field(s)) for s in traj)
        denom = params.horizon * sup_inf ** (params.p - 1) * sup_e
        if denom > 0:
            constants.append(lhs / denom)
    arr = np.array(constants)
    return {
        "trials": trials,
        "max": float(arr.max()),
        "p95": float(np.percentile(arr, 95)),
        "mean": float(arr.mean()),
    }


def derivative_x(s: Spectrum) -> Spectrum:
    """Convenience alias for the d/dx multiplier (used by norm cross-checks)."""
    return apply_multiplier(s, "dx")
