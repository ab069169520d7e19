import math

import numpy as np
import pytest

from levygrowth import (
    AtomMeasure,
    Constant,
    NoiseSpec,
    PathRecord,
    PowerDrift,
    SimulationConfig,
    second_moment_curve,
    simulate_ensemble,
    simulate_path,
)


def ode_solution(A, alpha, x0, t):
    """Closed form of dx = A x**alpha dt (the unregularized power drift)."""
    return ((1 - alpha) * A * t + x0 ** (1 - alpha)) ** (1.0 / (1 - alpha))


TWO_POINT = AtomMeasure(((-1.0, 0.5), (1.0, 0.5)))


class TestDeterministicRuns:
    def test_constant_drift_is_exact(self):
        cfg = SimulationConfig(horizon=10.0, dt=0.01, x0=0.0, seed=1)
        rec = simulate_path(Constant(1.0), [], cfg)
        assert rec.values[-1] == 10.0

    def test_power_drift_matches_ode_closed_form(self):
        cfg = SimulationConfig(horizon=100.0, dt=1e-3, x0=1.0, seed=1, record_stride=1000)
        rec = simulate_path(PowerDrift(1.0, 0.5), [], cfg)
        exact = ode_solution(1.0, 0.5, 1.0, 100.0)  # = 2601
        assert exact == 2601.0
        assert abs(rec.values[-1] - exact) / exact < 0.005

    def test_halving_dt_halves_endpoint_error(self):
        # start high so the (1+x^2) regularization offset is negligible
        # against the Euler error and the first-order rate is visible
        exact = ode_solution(1.0, 0.5, 100.0, 100.0)
        errs = []
        for dt in (2e-2, 1e-2, 5e-3):
            cfg = SimulationConfig(horizon=100.0, dt=dt, x0=100.0, seed=1, record_stride=10**6)
            rec = simulate_path(PowerDrift(1.0, 0.5), [], cfg)
            errs.append(abs(rec.values[-1] - exact))
        for coarse, fine in zip(errs, errs[1:]):
            assert 1.7 <= coarse / fine <= 2.3

    def test_initial_point_recorded(self):
        cfg = SimulationConfig(horizon=1.0, dt=0.1, x0=3.5, seed=0)
        rec = simulate_path(Constant(0.0), [], cfg)
        assert rec.times[0] == 0.0
        assert rec.values[0] == 3.5
        assert rec.times[-1] == 1.0


class TestJumps:
    def test_compensated_poisson_ensemble_mean_zero(self):
        # a=0, b=1, atoms {(1, 2)}: X(5) = N(5) - 10, ensemble mean ~ 0
        spec = NoiseSpec(sigma=0.0, jumps=AtomMeasure(((1.0, 2.0),)))
        cfg = SimulationConfig(horizon=5.0, dt=0.01, x0=0.0, seed=3)
        ens = simulate_ensemble(Constant(0.0), [(Constant(1.0), spec)], cfg, 400)
        finals = np.array([p.values[-1] for p in ens])
        se = finals.std(ddof=1) / math.sqrt(finals.size)
        assert abs(finals.mean()) <= 4.0 * se

    def test_cadlag_jump_bookkeeping(self):
        spec = NoiseSpec(sigma=0.5, jumps=TWO_POINT)
        cfg = SimulationConfig(horizon=50.0, dt=0.02, x0=1.0, seed=8)
        rec = simulate_path(PowerDrift(1.0, 0.5), [(PowerDrift(1.0, 0.25), spec)], cfg)
        assert len(rec.jump_times) > 0
        b = PowerDrift(1.0, 0.25)
        expected_post = rec.pre_jump_values + b.evaluate(rec.pre_jump_values) * rec.jump_sizes
        np.testing.assert_array_equal(rec.post_jump_values, expected_post)
        assert np.all((rec.jump_times > 0.0) & (rec.jump_times <= 50.0))

    def test_jump_events_materialize(self):
        spec = NoiseSpec(sigma=0.0, jumps=AtomMeasure(((2.0, 1.0),)))
        cfg = SimulationConfig(horizon=10.0, dt=0.1, x0=0.0, seed=2)
        rec = simulate_path(Constant(0.0), [(Constant(1.0), spec)], cfg)
        events = rec.jumps
        assert len(events) == len(rec.jump_times)
        assert all(e.size == 2.0 and e.noise_index == 0 for e in events)

    def test_martingale_property_state_independent_noise(self):
        spec = NoiseSpec(sigma=1.0, jumps=TWO_POINT)
        cfg = SimulationConfig(horizon=10.0, dt=0.01, x0=2.0, seed=5)
        ens = simulate_ensemble(Constant(0.0), [(Constant(1.0), spec)], cfg, 300)
        finals = np.array([p.values[-1] - 2.0 for p in ens])
        se = finals.std(ddof=1) / math.sqrt(finals.size)
        assert abs(finals.mean()) <= 4.0 * se


class TestDeterminism:
    def test_same_seed_identical(self):
        spec = NoiseSpec(sigma=1.0, jumps=TWO_POINT)
        cfg = SimulationConfig(horizon=20.0, dt=0.01, x0=1.0, seed=11)
        a = simulate_path(PowerDrift(1.0, 0.5), [(Constant(1.0), spec)], cfg)
        b = simulate_path(PowerDrift(1.0, 0.5), [(Constant(1.0), spec)], cfg)
        np.testing.assert_array_equal(a.values, b.values)
        np.testing.assert_array_equal(a.jump_times, b.jump_times)
        np.testing.assert_array_equal(a.jump_sizes, b.jump_sizes)

    def test_serial_matches_parallel(self):
        spec = NoiseSpec(sigma=1.0, jumps=TWO_POINT)
        cfg = SimulationConfig(horizon=20.0, dt=0.01, x0=1.0, seed=12)
        serial = simulate_ensemble(PowerDrift(1.0, 0.5), [(Constant(1.0), spec)], cfg, 6, n_jobs=1)
        parallel = simulate_ensemble(PowerDrift(1.0, 0.5), [(Constant(1.0), spec)], cfg, 6, n_jobs=3)
        for a, b in zip(serial, parallel):
            np.testing.assert_array_equal(a.values, b.values)
            np.testing.assert_array_equal(a.jump_times, b.jump_times)
            np.testing.assert_array_equal(a.pre_jump_values, b.pre_jump_values)

    def test_different_base_seeds_differ(self):
        cfg = SimulationConfig(horizon=5.0, dt=0.01, x0=0.0, seed=0)
        e1 = simulate_ensemble(Constant(0.0), [(Constant(1.0), NoiseSpec(sigma=1.0))], cfg, 2, base_seed=1)
        e2 = simulate_ensemble(Constant(0.0), [(Constant(1.0), NoiseSpec(sigma=1.0))], cfg, 2, base_seed=2)
        assert not np.array_equal(e1[0].values, e2[0].values)

    def test_paths_within_ensemble_differ(self):
        cfg = SimulationConfig(horizon=5.0, dt=0.01, x0=0.0, seed=0)
        ens = simulate_ensemble(Constant(0.0), [(Constant(1.0), NoiseSpec(sigma=1.0))], cfg, 3)
        assert not np.array_equal(ens[0].values, ens[1].values)


class TestValidationAndAborts:
    def test_zero_paths_rejected(self):
        cfg = SimulationConfig(horizon=1.0, dt=0.1, seed=0)
        with pytest.raises(ValueError, match="n_paths"):
            simulate_ensemble(Constant(1.0), [], cfg, 0)

    def test_bad_config_rejected(self):
        with pytest.raises(ValueError):
            SimulationConfig(horizon=1.0, dt=0.0)
        with pytest.raises(ValueError):
            SimulationConfig(horizon=-1.0, dt=0.1)
        with pytest.raises(ValueError):
            SimulationConfig(horizon=1.0, dt=2.0)
        with pytest.raises(ValueError):
            SimulationConfig(horizon=1e9, dt=1e-6)
        with pytest.raises(ValueError):
            SimulationConfig(horizon=1.0, dt=0.1, record_stride=0)

    def test_overflow_aborts_with_flag(self):
        # huge constant drift overflows the double range quickly
        cfg = SimulationConfig(horizon=10.0, dt=0.1, x0=1e300, seed=0)
        rec = simulate_path(Constant(1e308), [], cfg)
        assert rec.aborted
        assert rec.abort_time is not None
        assert math.isnan(rec.values[-1])

    def test_aborts_do_not_poison_ensemble(self):
        cfg = SimulationConfig(horizon=10.0, dt=0.1, x0=1e300, seed=0)
        ens = simulate_ensemble(Constant(1e308), [], cfg, 3)
        assert all(p.aborted for p in ens)
        assert len(ens) == 3


class TestRecording:
    def test_stride_subsamples_and_keeps_last(self):
        cfg = SimulationConfig(horizon=1.0, dt=0.01, x0=0.0, seed=0, record_stride=7)
        rec = simulate_path(Constant(1.0), [], cfg)
        assert rec.times[0] == 0.0
        assert rec.times[-1] == 1.0
        assert np.allclose(np.diff(rec.times)[:-1], 0.07)

    def test_value_at_interpolates(self):
        cfg = SimulationConfig(horizon=10.0, dt=0.5, x0=0.0, seed=0)
        rec = simulate_path(Constant(2.0), [], cfg)
        assert rec.value_at(3.25) == pytest.approx(6.5)
        np.testing.assert_allclose(rec.value_at([1.0, 2.0]), [2.0, 4.0])

    def test_csv_export(self, tmp_path):
        spec = NoiseSpec(sigma=0.0, jumps=AtomMeasure(((1.0, 1.0),)))
        cfg = SimulationConfig(horizon=10.0, dt=0.1, x0=0.0, seed=4)
        rec = simulate_path(Constant(0.0), [(Constant(1.0), spec)], cfg)
        pcsv = tmp_path / "p.csv"
        jcsv = tmp_path / "j.csv"
        rec.write_csv(pcsv)
        rec.write_jumps_csv(jcsv)
        assert pcsv.read_text().splitlines()[0] == "t,x"
        assert jcsv.read_text().splitlines()[0] == "t,u,k,x_pre,x_post"
        data = np.loadtxt(pcsv, delimiter=",", skiprows=1)
        np.testing.assert_array_equal(data[:, 0], rec.times)


class TestSecondMomentCurve:
    def test_zero_noise_linear_growth_gives_t_squared(self):
        cfg = SimulationConfig(horizon=10.0, dt=0.01, x0=0.0, seed=0)
        ens = simulate_ensemble(Constant(1.0), [], cfg, 3)
        curve = second_moment_curve(ens, [1.0, 2.0, 5.0, 10.0])
        for t, mean, _ in curve:
            assert mean == pytest.approx(t**2, rel=1e-12)

    def test_brownian_matches_ito_isometry(self):
        cfg = SimulationConfig(horizon=10.0, dt=0.01, x0=0.0, seed=6)
        ens = simulate_ensemble(Constant(0.0), [(Constant(1.0), NoiseSpec(sigma=1.0))], cfg, 400)
        curve = second_moment_curve(ens, [2.0, 5.0, 10.0])
        for t, mean, se in curve:
            assert abs(mean - t) <= 4.0 * se

    def test_frozen_state_gives_constant(self):
        cfg = SimulationConfig(horizon=5.0, dt=0.1, x0=3.0, seed=0)
        ens = simulate_ensemble(Constant(0.0), [], cfg, 2)
        curve = second_moment_curve(ens, [1.0, 5.0])
        for _, mean, _ in curve:
            assert mean == 9.0
