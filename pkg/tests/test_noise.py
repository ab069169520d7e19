import math

import numpy as np
import pytest

from levygrowth import (
    AtomMeasure,
    Constant,
    DensityMeasure,
    LevyMeasure,
    NoiseSpec,
    SimulationConfig,
    sample_jump_events,
    simulate_ensemble,
)


@pytest.fixture
def symmetric_atoms():
    return AtomMeasure(((-1.0, 0.5), (1.0, 0.5)))


class TestMeasureMassAndMoments:
    def test_mass_is_sum_of_weights(self, symmetric_atoms):
        assert symmetric_atoms.mass() == 1.0
        assert AtomMeasure(((2.0, 3.0),)).mass() == 3.0

    def test_uniform_density_mass(self):
        nu = DensityMeasure(lambda u: np.ones_like(u), (0.0, 2.0), 129)
        assert nu.mass() == pytest.approx(2.0, abs=1e-12)

    def test_symmetric_measure_moments(self, symmetric_atoms):
        assert symmetric_atoms.moment(2) == 1.0
        assert symmetric_atoms.moment(1) == 0.0

    def test_single_atom_second_moment(self):
        assert AtomMeasure(((2.0, 3.0),)).moment(2) == 12.0

    def test_density_moments_match_quadrature(self):
        # oracle: integrals of u, u^2 over [0, 2] with density u are 8/3 and 4
        nu = DensityMeasure(lambda u: np.asarray(u, dtype=float), (0.0, 2.0), 257)
        assert nu.moment(1) == pytest.approx(8.0 / 3.0, rel=1e-10)
        assert nu.moment(2) == pytest.approx(4.0, rel=1e-10)

    def test_even_node_count_bumped_to_odd(self):
        nu = DensityMeasure(lambda u: np.ones_like(u), (0.0, 1.0), 128)
        assert nu._grid.size == 129
        assert nu.mass() == pytest.approx(1.0, abs=1e-12)


class TestMeasureValidation:
    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            AtomMeasure(((1.0, -0.5),))

    def test_zero_mass_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            AtomMeasure(((1.0, 0.0),))

    def test_negative_density_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            DensityMeasure(lambda u: -np.ones_like(u), (0.0, 1.0), 33)

    def test_unbounded_support_rejected(self):
        with pytest.raises(ValueError, match="finite"):
            DensityMeasure(lambda u: np.ones_like(u), (0.0, math.inf), 33)

    def test_negative_sigma_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            NoiseSpec(sigma=-1.0)


class TestVarianceRate:
    def test_pure_gaussian(self):
        assert NoiseSpec(sigma=1.0).variance_rate() == 1.0

    def test_pure_jump(self, symmetric_atoms):
        assert NoiseSpec(sigma=0.0, jumps=symmetric_atoms).variance_rate() == 1.0

    def test_mixed(self):
        spec = NoiseSpec(sigma=1.0, jumps=AtomMeasure(((2.0, 3.0),)))
        assert spec.variance_rate() == 13.0


class TestJumpSampling:
    def test_poisson_count_tail_bound(self, symmetric_atoms):
        # count ~ Poisson(1000): 4-sigma window is 1000 +- 4*sqrt(1000)
        for seed in (0, 1, 2, 3, 4):
            rng = np.random.default_rng(seed)
            events = sample_jump_events(symmetric_atoms, 1000.0, rng)
            assert abs(len(events) - 1000.0) <= 4.0 * math.sqrt(1000.0)

    def test_degenerate_size_law(self):
        rng = np.random.default_rng(7)
        counts = []
        for _ in range(50):
            events = sample_jump_events(AtomMeasure(((5.0, 2.0),)), 10.0, rng)
            counts.append(len(events))
            assert all(e.size == 5.0 for e in events)
        # mean count ~ Poisson(20)/path; SE of the mean over 50 paths
        se = math.sqrt(20.0 / 50.0)
        assert abs(np.mean(counts) - 20.0) <= 4.0 * se

    def test_times_sorted_within_horizon(self, symmetric_atoms):
        rng = np.random.default_rng(3)
        events = sample_jump_events(symmetric_atoms, 50.0, rng)
        times = [e.time for e in events]
        assert all(t1 < t2 for t1, t2 in zip(times, times[1:]))
        assert all(0.0 < t <= 50.0 for t in times)

    def test_determinism_fixed_seed(self, symmetric_atoms):
        a = sample_jump_events(symmetric_atoms, 10.0, np.random.default_rng(42))
        b = sample_jump_events(symmetric_atoms, 10.0, np.random.default_rng(42))
        assert a == b

    def test_nonpositive_horizon_rejected(self, symmetric_atoms):
        with pytest.raises(ValueError, match="horizon"):
            sample_jump_events(symmetric_atoms, 0.0, np.random.default_rng(0))

    def test_density_samples_stay_in_support(self):
        nu = DensityMeasure(lambda u: np.ones_like(u), (0.0, 2.0), 129)
        rng = np.random.default_rng(5)
        sizes = nu.sample_sizes(5000, rng)
        assert np.all((sizes >= 0.0) & (sizes <= 2.0))
        # uniform on [0, 2]: mean 1, SE = (2/sqrt(12))/sqrt(n)
        assert abs(sizes.mean() - 1.0) <= 4.0 * (2.0 / math.sqrt(12 * 5000))


@pytest.fixture(scope="module")
def noise_paths():
    spec = NoiseSpec(sigma=1.0, jumps=AtomMeasure(((-1.0, 0.5), (2.0, 0.25))))
    cfg = SimulationConfig(horizon=20.0, dt=0.02, x0=0.0, seed=99)
    ens = simulate_ensemble(Constant(0.0), [(Constant(1.0), spec)], cfg, 400)
    finals = np.array([p.values[-1] for p in ens])
    return spec, finals


class TestProcessLevelProperties:
    """Centering and isometry of the simulated compensated noise."""

    def test_centering(self, noise_paths):
        spec, finals = noise_paths
        n = finals.size
        se = math.sqrt(spec.variance_rate() * 20.0 / n)
        assert abs(finals.mean()) <= 4.0 * se

    def test_isometry(self, noise_paths):
        spec, finals = noise_paths
        n = finals.size
        var = finals.var(ddof=1) / 20.0
        se = var * math.sqrt(2.0 / (n - 1))
        assert abs(var - spec.variance_rate()) <= 4.0 * se


class TestConfigRoundTrip:
    def test_atoms(self, symmetric_atoms):
        again = LevyMeasure.from_config(symmetric_atoms.to_config())
        assert again == symmetric_atoms

    def test_density(self):
        nu = DensityMeasure(lambda u: 1.0 + 0.5 * np.asarray(u), (0.0, 2.0), 65)
        again = LevyMeasure.from_config(nu.to_config())
        assert again.mass() == pytest.approx(nu.mass(), rel=1e-12)
        assert again.moment(2) == pytest.approx(nu.moment(2), rel=1e-12)

    def test_noise_spec(self):
        spec = NoiseSpec(sigma=0.5, jumps=AtomMeasure(((1.0, 2.0),)))
        again = NoiseSpec.from_config(spec.to_config())
        assert again.sigma == 0.5
        assert again.variance_rate() == spec.variance_rate()

    def test_unknown_type_rejected(self):
        with pytest.raises(ValueError, match="unknown jump measure"):
            LevyMeasure.from_config({"type": "cauchy"})
