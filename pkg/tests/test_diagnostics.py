import numpy as np
import pytest

import halfwave_lab as hw

from conftest import random_field


class TestMass:
    def test_constant(self, grid32):
        f = hw.sample_function(grid32, hw.Constant(2.0))
        assert hw.mass(f) == pytest.approx(4.0 * grid32.area)

    def test_zero(self, grid32):
        f = hw.sample_function(grid32, hw.Constant(0.0))
        assert hw.mass(f) == 0.0

    def test_gaussian_oracle(self):
        g = hw.make_grid(128, 128, 10.0, 10.0)
        f = hw.sample_function(g, hw.Gaussian(1.0, 1.0))
        assert hw.mass(f) == pytest.approx(np.pi, abs=1e-6)


class TestEnergy:
    # NOTE: the potential term enters with +mu/(p+1), the sign conserved by
    # the flow (the conserved functional; see the ledger for the sign check)

    def test_constant_data(self, grid32):
        c = 1.3
        f = hw.sample_function(grid32, hw.Constant(c))
        params = hw.SimulationParams(mu=1, k=1)
        assert hw.energy(f, params) == pytest.approx(c**4 * grid32.area / 4,
                                                     rel=1e-12)

    def test_plane_wave(self, grid32):
        f = hw.sample_function(grid32, hw.PlaneWave(2, 0, 1.0))
        params = hw.SimulationParams(mu=1, k=1)
        xi = np.pi * 2 / grid32.lx
        want = 0.5 * xi**2 * grid32.area + grid32.area / 4
        assert hw.energy(f, params) == pytest.approx(want, rel=1e-10)

    def test_zero(self, grid32):
        f = hw.sample_function(grid32, hw.Constant(0.0))
        assert hw.energy(f, hw.SimulationParams(mu=-1, k=2)) == 0.0

    def test_conserved_under_split_step(self, gaussian64):
        f0, u0 = gaussian64
        params = hw.SimulationParams(mu=-1, k=1, horizon=0.05)
        e0 = hw.energy(f0, params)
        traj = hw.evolve(u0, params, dt=5e-4, snapshot_every=20)
        for _, s in traj[1:]:
            assert abs(hw.energy(hw.to_field(s), params) - e0) / abs(e0) < 1e-6


class TestLinearEstimate:
    def test_zero_data(self, grid32):
        u0 = hw.Spectrum(grid32, np.zeros(grid32.shape, complex))
        rep = hw.check_linear_estimate(u0, np.linspace(0, 1, 5))
        assert rep.lhs == 0.0 and rep.rhs == 0.0

    def test_single_mode_margin(self, grid32):
        c = np.zeros(grid32.shape, dtype=complex)
        c[1, 2] = 0.5
        u0 = hw.Spectrum(grid32, c)
        rep = hw.check_linear_estimate(u0, np.linspace(0, 2, 9))
        xi = np.pi * 2 / grid32.lx
        eta = np.pi / grid32.ly
        want_lhs = 0.5 * np.sqrt(grid32.area * (xi**2 + eta + 1)) + 0.5 + 0.5
        assert rep.lhs == pytest.approx(want_lhs, rel=1e-12)
        # a single mode saturates the bound: linf == wiener and the free flow
        # preserves every component, so the margin vanishes exactly
        assert rep.margin == pytest.approx(0.0, abs=1e-10)

    def test_random_ensemble_margin(self, grid32):
        rng = hw.make_rng(60)
        for _ in range(20):
            _, u0 = random_field(grid32, rng)
            rep = hw.check_linear_estimate(u0, np.linspace(0, 5, 11))
            assert rep.margin >= -1e-10


class TestDuhamelEstimates:
    def _traj(self, grid, rng, nodes, r):
        spectra = hw.random_trajectory(grid, len(nodes), rng, y_target=0.9 * r)
        return list(zip(nodes, spectra))

    def test_zero_trajectory(self, grid32):
        params = hw.SimulationParams(mu=1, k=1, horizon=0.1)
        nodes = np.linspace(0, 0.1, 5)
        traj = [(t, hw.Spectrum(grid32, np.zeros(grid32.shape, complex)))
                for t in nodes]
        reps = hw.check_duhamel_estimates(traj, params, r=1.0)
        assert all(rep.lhs == 0.0 for rep in reps)

    @pytest.mark.parametrize("k", [1, 2])
    def test_wiener_and_linf_chains_hold_with_constant_one(self, grid32, k):
        params = hw.SimulationParams(mu=1, k=k, horizon=0.1)
        nodes = np.linspace(0, 0.1, 9)
        rng = hw.make_rng(61)
        for _ in range(10):
            traj = self._traj(grid32, rng, nodes, 1.0)
            reps = {r.estimate_id: r for r in
                    hw.check_duhamel_estimates(traj, params, r=1.0)}
            assert reps["duhamel_Linf"].margin >= -1e-10
            assert reps["duhamel_L1"].margin >= -1e-10

    def test_ball_violation_rejected(self, grid32):
        params = hw.SimulationParams(mu=1, k=1, horizon=0.1)
        nodes = np.linspace(0, 0.1, 5)
        rng = hw.make_rng(62)
        traj = self._traj(grid32, rng, nodes, 2.0)
        with pytest.raises(ValueError):
            hw.check_duhamel_estimates(traj, params, r=0.5)

    def test_energy_chain_constant_stable_under_refinement(self):
        # fixed smooth data trajectory on three grids; the empirical constant
        # must stay within 2x across refinement
        consts = []
        nodes = np.linspace(0, 0.1, 9)
        params = hw.SimulationParams(mu=1, k=1, horizon=0.1)
        for n in (32, 64, 128):
            g = hw.make_grid(n, n, 10.0, 10.0)
            f = hw.sample_function(g, hw.Gaussian(0.2, 1.0, modulation=(1.0, 0.5)))
            u0 = hw.to_spectrum(f)
            spectra = [hw.apply_linear_flow(u0, float(t)) for t in nodes]
            r = hw.y_norm_spectra(spectra) * 1.01
            rep = {x.estimate_id: x for x in
                   hw.check_duhamel_estimates(list(zip(nodes, spectra)),
                                              params, r)}
            consts.append(rep["duhamel_E"].empirical_constant)
        assert max(consts) / min(consts) < 2.0


class TestLipschitzEstimates:
    def test_equal_trajectories(self, grid32):
        params = hw.SimulationParams(mu=1, k=1, horizon=0.1)
        nodes = np.linspace(0, 0.1, 5)
        rng = hw.make_rng(63)
        spectra = hw.random_trajectory(grid32, 5, rng, y_target=0.5)
        traj = list(zip(nodes, spectra))
        reps = hw.check_lipschitz_estimates(traj, traj, params, r=1.0)
        for rep in reps:
            assert rep.lhs == pytest.approx(0.0, abs=1e-14)
            assert rep.margin >= 0

    def test_against_zero_trajectory(self, grid32):
        params = hw.SimulationParams(mu=1, k=1, horizon=0.1)
        nodes = np.linspace(0, 0.1, 5)
        rng = hw.make_rng(64)
        spectra = hw.random_trajectory(grid32, 5, rng, y_target=0.5)
        zeros = [hw.Spectrum(grid32, np.zeros(grid32.shape, complex))
                 for _ in nodes]
        reps = {r.estimate_id: r for r in hw.check_lipschitz_estimates(
            list(zip(nodes, spectra)), list(zip(nodes, zeros)), params, r=1.0)}
        assert reps["lipschitz_wiener"].margin > 0

    @pytest.mark.parametrize("k", [1, 2])
    def test_wiener_chain_random_pairs(self, grid32, k):
        params = hw.SimulationParams(mu=1, k=k, horizon=0.1)
        nodes = np.linspace(0, 0.1, 5)
        rng = hw.make_rng(65)
        for _ in range(20):
            u = hw.random_trajectory(grid32, 5, rng, y_target=0.9)
            v = hw.random_trajectory(grid32, 5, rng, y_target=0.9)
            reps = {r.estimate_id: r for r in hw.check_lipschitz_estimates(
                list(zip(nodes, u)), list(zip(nodes, v)), params, r=1.0)}
            assert reps["lipschitz_wiener"].margin >= -1e-10
            assert reps["lipschitz_Linf"].margin >= -1e-10


class TestConservationUnderPicard:
    def test_mass_and_energy_drift(self, gaussian64):
        f0, u0 = gaussian64
        r, delta, t_max = hw.select_local_time(
            hw.energy_norm(u0), hw.wiener_norm(u0), c=0.1, k=1)
        params = hw.SimulationParams(mu=-1, k=1, horizon=t_max)
        st = hw.picard_solve(u0, params, nodes_m=64, tol=1e-10, max_iter=40)
        m0, e0 = hw.mass(f0), hw.energy(f0, params)
        for _, s in st.trajectory():
            f = hw.to_field(s)
            assert abs(hw.mass(f) - m0) / m0 <= 1e-8
            assert abs(hw.energy(f, params) - e0) / abs(e0) <= 1e-6


class TestCalibration:
    def test_calibration_report(self, grid32):
        params = hw.SimulationParams(mu=1, k=1, horizon=0.05)
        cal = hw.calibrate_energy_constant(grid32, params, nodes_m=8,
                                           trials=10, r=1.0, seed=5)
        assert cal["p95"] <= cal["max"]
        assert 0 < cal["mean"] < np.inf

    def test_needs_positive_horizon(self, grid32):
        params = hw.SimulationParams(mu=1, k=1, horizon=0.0)
        with pytest.raises(ValueError):
            hw.calibrate_energy_constant(grid32, params, 8, 5, 1.0)
