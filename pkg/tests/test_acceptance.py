"""Acceptance suite: one test per criterion, one printed pass/fail line each.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the lines inline.
"""

import contextlib
import time

import numpy as np
import pytest

import halfwave_lab as hw


@contextlib.contextmanager
def criterion(label):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"FAIL — {label}")
        raise
    print(f"PASS — {label} ({time.monotonic() - start:.1f}s)")


@pytest.fixture(scope="module")
def grid():
    return hw.make_grid(64, 64, 10.0, 10.0)


@pytest.fixture(scope="module")
def gaussian_data(grid):
    f = hw.sample_function(grid, hw.Gaussian(amplitude=0.5, sigma=1.0))
    return f, hw.to_spectrum(f)


@pytest.fixture(scope="module")
def calibrated_time(grid, gaussian_data):
    """(r, t_max, c_p95) for the standard Gaussian scenario, k=1, mu=-1."""
    _, u0 = gaussian_data
    en, wn = hw.energy_norm(u0), hw.wiener_norm(u0)
    r0 = 6.0 * max(en, wn)
    cal = hw.calibrate_energy_constant(
        grid, hw.SimulationParams(mu=-1, k=1, horizon=0.01),
        nodes_m=16, trials=20, r=r0, seed=11)
    r, delta, t_max = hw.select_local_time(en, wn, cal["p95"], k=1)
    return r, t_max, cal["p95"]


def test_criterion_1_unitarity_and_invariance(grid):
    with criterion("criterion 1: S(t) preserves L2, energy, and Wiener norms "
                   "to 1e-12 over 100 random fields"):
        rng = hw.make_rng(100)
        for _ in range(100):
            s = hw.random_band_limited_spectrum(grid, rng)
            t = float(rng.uniform(-10, 10))
            moved = hw.apply_linear_flow(s, t)
            assert hw.l2_norm(hw.to_field(moved)) == pytest.approx(
                hw.l2_norm(hw.to_field(s)), rel=1e-12)
            assert hw.energy_norm(moved) == pytest.approx(
                hw.energy_norm(s), rel=1e-12)
            assert hw.wiener_norm(moved) == pytest.approx(
                hw.wiener_norm(s), rel=1e-12)


@pytest.mark.parametrize("k", [1, 2])
def test_criterion_2_discrete_wiener_algebra_exactness(grid, k):
    with criterion(f"criterion 2 (k={k}): Duhamel Linf/L1 chains with C=1 and "
                   f"difference chain with (2k+1)r^2k, margins >= -1e-10, "
                   f"100 trajectories/pairs"):
        params = hw.SimulationParams(mu=1, k=k, horizon=0.1)
        nodes = np.linspace(0.0, 0.1, 9)
        rng = hw.make_rng(200 + k)
        r = 1.0
        for _ in range(100):
            traj = hw.random_trajectory(grid, 9, rng, y_target=0.9 * r)
            reps = {x.estimate_id: x for x in hw.check_duhamel_estimates(
                list(zip(nodes, traj)), params, r)}
            assert reps["duhamel_Linf"].margin >= -1e-10
            assert reps["duhamel_L1"].margin >= -1e-10
        for _ in range(100):
            u = hw.random_trajectory(grid, 9, rng, y_target=0.9 * r)
            v = hw.random_trajectory(grid, 9, rng, y_target=0.9 * r)
            reps = {x.estimate_id: x for x in hw.check_lipschitz_estimates(
                list(zip(nodes, u)), list(zip(nodes, v)), params, r)}
            assert reps["lipschitz_wiener"].margin >= -1e-10


def test_criterion_3_constant_data_ode_oracle(grid):
    with criterion("criterion 3: constant data c=0.1 matches c*exp(-i mu |c|^2 t): "
                   "Picard to 1e-8, split-step to 1e-12"):
        c = 0.1
        u0 = hw.to_spectrum(hw.sample_function(grid, hw.Constant(c)))
        for mu in (1, -1):
            params = hw.SimulationParams(mu=mu, k=1, horizon=0.1)
            st = hw.picard_solve(u0, params, nodes_m=64, tol=1e-10, max_iter=40)
            for t, s in st.trajectory():
                exact = c * np.exp(-1j * mu * c**2 * t)
                got = hw.to_field(s).values[0, 0]
                assert abs(got - exact) / abs(exact) <= 1e-8
            for dt in (0.05, 0.01, 0.002):
                traj = hw.evolve(u0, params, dt=dt, snapshot_every=10**9)
                t, s = traj[-1]
                exact = c * np.exp(-1j * mu * c**2 * t)
                got = hw.to_field(s).values[0, 0]
                assert abs(got - exact) <= 1e-12


def test_criterion_4_contraction_certification(grid, gaussian_data, calibrated_time):
    with criterion("criterion 4: contraction ratio <= 0.55 at the calibrated "
                   "existence time over 50 pairs; Picard <= 40 iterations"):
        _, u0 = gaussian_data
        r, t_max, _ = calibrated_time
        params = hw.SimulationParams(mu=-1, k=1, horizon=t_max)
        rep = hw.measure_contraction(u0, params, nodes_m=32, trials=50, r=r,
                                     seed=12)
        assert rep.max_ratio <= 0.55
        st = hw.picard_solve(u0, params, nodes_m=32, tol=1e-10, max_iter=40)
        assert st.converged and st.iteration_index <= 40


def test_criterion_5_solver_cross_validation(grid, gaussian_data, calibrated_time):
    with criterion("criterion 5: Picard fixed point vs split-step agree in "
                   "relative L2 to 1e-6 at T = t_max"):
        _, u0 = gaussian_data
        _, t_max, _ = calibrated_time
        params = hw.SimulationParams(mu=-1, k=1, horizon=t_max)
        st = hw.picard_solve(u0, params, nodes_m=64, tol=1e-10, max_iter=40)
        picard_end = st.iterate[-1]
        strang_end = hw.evolve(u0, params, dt=t_max / 1024,
                               snapshot_every=10**9)[-1][1]
        diff = hw.l2_norm(hw.to_field(hw.Spectrum(
            grid, picard_end.coeffs - strang_end.coeffs)))
        assert diff / hw.l2_norm(hw.to_field(strang_end)) <= 1e-6


def test_criterion_6_conservation(grid, gaussian_data):
    with criterion("criterion 6: split-step mass drift <= 1e-12 and energy "
                   "drift <= 1e-6 at dt=1e-3, improving ~4x at dt/2"):
        f0, u0 = gaussian_data
        params = hw.SimulationParams(mu=-1, k=1, horizon=0.1)
        m0, e0 = hw.mass(f0), hw.energy(f0, params)
        drifts = {}
        for dt in (1e-3, 5e-4):
            traj = hw.evolve(u0, params, dt=dt, snapshot_every=20)
            mdrift = edrift = 0.0
            for _, s in traj[1:]:
                f = hw.to_field(s)
                mdrift = max(mdrift, abs(hw.mass(f) - m0) / m0)
                edrift = max(edrift, abs(hw.energy(f, params) - e0) / abs(e0))
            drifts[dt] = edrift
            assert mdrift <= 1e-12
        assert drifts[1e-3] <= 1e-6
        assert 3.0 <= drifts[1e-3] / drifts[5e-4] <= 5.0


def test_criterion_7_second_order_confirmation(grid, gaussian_data, calibrated_time):
    with criterion("criterion 7: trapezoid-Picard and Strang refinement error "
                   "ratios both in [3.5, 4.5]"):
        _, u0 = gaussian_data
        _, t_max, _ = calibrated_time
        params = hw.SimulationParams(mu=-1, k=1, horizon=t_max)

        ref = hw.picard_solve(u0, params, nodes_m=512, tol=1e-12,
                              max_iter=40).iterate[-1]
        perr = {}
        for m in (16, 32):
            end = hw.picard_solve(u0, params, nodes_m=m, tol=1e-12,
                                  max_iter=40).iterate[-1]
            perr[m] = hw.l2_norm(hw.to_field(hw.Spectrum(
                grid, end.coeffs - ref.coeffs)))
        assert 3.5 <= perr[16] / perr[32] <= 4.5

        sref = hw.evolve(u0, params, dt=t_max / 256, snapshot_every=10**9)[-1][1]
        serr = {}
        for n in (16, 32):
            end = hw.evolve(u0, params, dt=t_max / n, snapshot_every=10**9)[-1][1]
            serr[n] = hw.l2_norm(hw.to_field(hw.Spectrum(
                grid, end.coeffs - sref.coeffs)))
        assert 3.5 <= serr[16] / serr[32] <= 4.5


def test_criterion_8_gagliardo_nirenberg_probe():
    with criterion("criterion 8: Lq/energy ratio nonincreasing in lambda for "
                   "q=4, strictly increasing for q=8"):
        def ratios(q):
            out = []
            for lam in (1, 2, 4, 8):
                # lam * u(lam x, lam^2 y) for a modulated Gaussian, on a box
                # scaled with the family so each member is resolved equally
                g = hw.make_grid(128, 128, 10.0 / lam, 10.0 / lam**2)
                x, y = g.meshgrid()
                vals = lam * np.exp(
                    -((lam * x) ** 2 + (lam**2 * y) ** 2) / 2.0
                    + 1j * 2.0 * lam * x)
                f = hw.Field(g, vals)
                out.append(hw.lq_norm(f, q) / hw.energy_norm(hw.to_spectrum(f)))
            return out
        r4 = ratios(4)
        assert all(b <= a + 1e-12 for a, b in zip(r4, r4[1:]))
        r8 = ratios(8)
        assert all(b > a for a, b in zip(r8, r8[1:]))


def test_criterion_9_determinism(tmp_path):
    with criterion("criterion 9: identical config + seed give byte-identical "
                   "CSV/JSON outputs"):
        from halfwave_lab.cli import run
        args = ["verify", "--suite", "wiener", "--trials", "10", "--seed", "7",
                "--grid", "32"]
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert run(args + ["--out", str(out1)]) == 0
        assert run(args + ["--out", str(out2)]) == 0
        for name in ("estimates.csv", "report.json", "manifest.json"):
            b1 = (out1 / name).read_bytes()
            b2 = (out2 / name).read_bytes()
            # manifests differ only in the out path; normalize it away
            if name == "manifest.json":
                b1 = b1.replace(str(out1).encode(), b"OUT")
                b2 = b2.replace(str(out2).encode(), b"OUT")
            assert b1 == b2
