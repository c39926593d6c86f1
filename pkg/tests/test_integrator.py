import numpy as np
import pytest

from wgqed.hierarchy import ChainParams, DriveMode, HierarchyState
from wgqed.integrator import (
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    diagnostics,
    integrate,
    rk4_step,
)
from wgqed.pulse import GaussianPulse

FAR_PULSE = GaussianPulse(tbar=1e9, width=1.5)


def decayed_single_qubit_state(p_excited=0.7):
    s = HierarchyState.ground(1)
    prepared = np.diag([1.0 - p_excited, p_excited]).astype(complex)
    s.blocks[0] = prepared
    s.blocks[2] = prepared.copy()
    s.blocks[5] = prepared.copy()
    return s


class TestRk4Step:
    def test_zero_rhs_leaves_state(self):
        state = np.arange(12.0).reshape(3, 2, 2)
        out = rk4_step(state, 0.0, 0.1, lambda t, s: np.zeros_like(s))
        assert np.array_equal(out, state)

    def test_single_step_error_order_dt5(self):
        # dx/dt = -x from x=1: one RK4 step has local error ~ dt^5 / 120
        dt = 0.1
        out = rk4_step(np.array(1.0), 0.0, dt, lambda t, x: -x)
        err = abs(float(out) - np.exp(-dt))
        assert 0.0 < err < 1e-7

    def test_global_error_ratio_sixteen(self):
        def solve(dt):
            x = np.array(1.0)
            steps = int(round(1.0 / dt))
            for k in range(steps):
                x = rk4_step(x, k * dt, dt, lambda t, v: -v)
            return abs(float(x) - np.exp(-1.0))

        ratio = solve(0.01) / solve(0.005)
        assert 14.0 < ratio < 18.0

    def test_nonfinite_aborts(self):
        with np.errstate(over="ignore"):
            with pytest.raises(IntegrationError):
                rk4_step(np.array(1e300), 0.0, 1.0, lambda t, x: x * 1e300)


class TestIntegrate:
    def test_zero_time_single_sample(self):
        traj = integrate(
            HierarchyState.ground(1),
            ChainParams(n=1),
            FAR_PULSE,
            DriveMode.TWO_PHOTON,
            IntegratorConfig(dt=1e-3, t_end=0.0),
        )
        assert len(traj) == 1
        assert traj.times[0] == 0.0
        assert traj.p_ground[0] == pytest.approx(1.0)

    def test_no_drive_matches_analytic_decay(self):
        # P_e(t) = P_e(0) exp(-(gamma_R + gamma_L) t), max error < 1e-8 at dt=1e-3
        traj = integrate(
            decayed_single_qubit_state(0.7),
            ChainParams(n=1),
            FAR_PULSE,
            DriveMode.TWO_PHOTON,
            IntegratorConfig(dt=1e-3, t_end=5.0),
        )
        analytic = 0.7 * np.exp(-2.0 * traj.times)
        assert np.abs(traj.p_excited[:, 0] - analytic).max() < 1e-8

    def test_sample_spacing_uniform(self):
        traj = integrate(
            HierarchyState.ground(1),
            ChainParams(n=1),
            FAR_PULSE,
            DriveMode.NONE,
            IntegratorConfig(dt=1e-3, t_end=0.1, sample_every=20),
        )
        assert np.allclose(np.diff(traj.times), 0.02)

    def test_halving_dt_leaves_observables(self):
        pulse = GaussianPulse(tbar=1.0, width=0.5)
        p = ChainParams(n=2)

        def observables(dt, sample_every):
            traj = integrate(
                HierarchyState.ground(2), p, pulse, DriveMode.TWO_PHOTON,
                IntegratorConfig(dt=dt, t_end=2.0, sample_every=sample_every),
            )
            return np.column_stack(
                [traj.p_ground, traj.p_one, traj.p_two, traj.c_avg_all_pairs]
            )

        coarse = observables(2e-3, 5)
        fine = observables(1e-3, 10)
        assert np.abs(coarse - fine).max() < 1e-6

    def test_bitwise_deterministic(self):
        pulse = GaussianPulse(tbar=1.0, width=0.5)
        kwargs = dict(
            params=ChainParams(n=2),
            pulse=pulse,
            mode=DriveMode.TWO_PHOTON,
            config=IntegratorConfig(dt=1e-3, t_end=1.0),
        )
        a = integrate(HierarchyState.ground(2), **kwargs)
        b = integrate(HierarchyState.ground(2), **kwargs)
        assert np.array_equal(a.p_excited, b.p_excited)
        assert np.array_equal(a.c_avg_all_pairs, b.c_avg_all_pairs)

    def test_trace_breach_aborts_with_time(self):
        bad = HierarchyState.ground(1)
        bad.blocks[5][0, 0] = 1.0 + 1e-3
        with pytest.raises(IntegrationError, match="t=0"):
            integrate(
                bad, ChainParams(n=1), FAR_PULSE, DriveMode.TWO_PHOTON,
                IntegratorConfig(dt=1e-3, t_end=1.0),
            )

    def test_positivity_warning_fires(self):
        # strong driving makes the evolved state dip below the monitor threshold
        pulse = GaussianPulse(tbar=5.0, width=1.5)
        with pytest.warns(RuntimeWarning, match="positivity"):
            integrate(
                HierarchyState.ground(2), ChainParams(n=2), pulse,
                DriveMode.TWO_PHOTON, IntegratorConfig(dt=2e-3, t_end=8.0, sample_every=5),
            )

    def test_observers_collected(self):
        def purity(t, state):
            rho = state.rho_s
            return {"purity": float(np.real(np.trace(rho @ rho)))}

        traj = integrate(
            HierarchyState.ground(1), ChainParams(n=1), FAR_PULSE,
            DriveMode.TWO_PHOTON, IntegratorConfig(dt=1e-3, t_end=0.05),
            observers=[purity],
        )
        assert "purity" in traj.extras
        assert np.allclose(traj.extras["purity"], 1.0)

    def test_zero_drive_blocks_coincide(self):
        # with the pulse amplitude identically zero the three unit-trace
        # blocks obey the same undriven equation from identical initial data
        rng = np.random.default_rng(31)
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = a @ a.conj().T
        rho /= np.trace(rho)
        state = HierarchyState.ground(2)
        for idx in (0, 2, 5):
            state.blocks[idx] = rho.copy()
        from wgqed.hierarchy import RhsEvaluator

        rhs = RhsEvaluator(ChainParams(n=2, gamma_l=0.4, delta=0.2), FAR_PULSE,
                           DriveMode.TWO_PHOTON)
        blocks = state.blocks.astype(complex)
        dt = 1e-3
        for k in range(2000):
            blocks = rk4_step(blocks, k * dt, dt, rhs)
        assert np.abs(blocks[0] - blocks[5]).max() < 1e-10
        assert np.abs(blocks[2] - blocks[5]).max() < 1e-10
        for idx in (1, 3, 4):
            assert np.abs(blocks[idx]).max() < 1e-14

    def test_one_and_two_photon_lower_blocks_agree(self):
        pulse = GaussianPulse(tbar=1.0, width=0.5)
        p = ChainParams(n=2)
        from wgqed.hierarchy import RhsEvaluator
        from wgqed.integrator import rk4_step as step

        one = RhsEvaluator(p, pulse, DriveMode.ONE_PHOTON)
        two = RhsEvaluator(p, pulse, DriveMode.TWO_PHOTON)
        s1 = HierarchyState.ground(2).blocks[:3].astype(complex)
        s2 = HierarchyState.ground(2).blocks.astype(complex)
        dt = 1e-3
        for k in range(500):
            s1 = step(s1, k * dt, dt, one)
            s2 = step(s2, k * dt, dt, two)
        assert np.abs(s1 - s2[:3]).max() < 1e-10


class TestDiagnostics:
    def test_initial_state_clean(self):
        d = diagnostics(HierarchyState.ground(3))
        assert d.trace_err == 0.0
        assert d.herm_err == 0.0
        assert d.zero_block_trace == 0.0
        assert abs(d.min_eigenvalue) < 1e-15

    def test_detects_corruption(self):
        s = HierarchyState.ground(2)
        s.blocks[5][0, 1] = 0.1  # non-hermitian entry
        d = diagnostics(s)
        assert d.herm_err == pytest.approx(0.1)

    def test_reports_zero_block_trace(self):
        s = HierarchyState.ground(2)
        s.blocks[1][0, 0] = 1e-5
        assert diagnostics(s).zero_block_trace == pytest.approx(1e-5)


def test_trajectory_norm_selector():
    traj = Trajectory(
        times=np.array([0.0]),
        n_qubits=2,
        pair_labels=[(1, 2)],
        p_ground=np.array([1.0]),
        p_one=np.zeros(1),
        p_two=np.zeros(1),
        p_total=np.array([1.0]),
        p_excited=np.zeros((1, 2)),
        pair_concurrence=np.zeros((1, 1)),
        c_avg_all_pairs=np.zeros(1),
        c_avg_half_n=np.zeros(1),
        pulse_intensity=np.zeros(1),
        trace_err=np.zeros(1),
        herm_err=np.zeros(1),
        zero_block_trace=np.zeros(1),
        min_eigenvalue=np.zeros(1),
    )
    assert traj.c_avg("all-pairs") is traj.c_avg_all_pairs
    assert traj.c_avg("half-n") is traj.c_avg_half_n
    with pytest.raises(ValueError):
        traj.c_avg("bogus")
