import numpy as np
import pytest

from levygrowth import (
    AtomMeasure,
    Constant,
    NoiseSpec,
    PowerDrift,
    PowerDiffusion,
    TableCoefficient,
    check_drift_asymptotics,
    check_growth_condition,
    coefficient_from_config,
    condition_C_checklist,
)
from levygrowth.coefficients import ConditionReport, default_growth_grid


class TestEvaluate:
    def test_power_drift_at_origin(self):
        assert PowerDrift(1.0, 0.5).evaluate(0.0) == 1.0

    def test_power_drift_alpha_zero_is_constant(self):
        assert PowerDrift(2.0, 0.0).evaluate(1e3) == 2.0

    def test_power_diffusion_asymptotic_ratio(self):
        b = PowerDiffusion(1.0, 0.5)
        for x in (1e3, 1e5, 1e7):
            assert b.evaluate(x) / x**0.5 == pytest.approx(1.0, rel=1e-5)

    def test_table_clamps_outside_grid(self):
        t = TableCoefficient((0.0, 1.0, 2.0), (5.0, 6.0, 7.0))
        assert t.evaluate(-10.0) == 5.0
        assert t.evaluate(10.0) == 7.0
        assert t.evaluate(0.5) == 5.5

    def test_vectorized_evaluate(self):
        x = np.array([-1.0, 0.0, 2.0])
        np.testing.assert_allclose(Constant(3.0).evaluate(x), [3.0, 3.0, 3.0])

    def test_power_drift_positive_and_monotone(self):
        a = PowerDrift(0.7, 0.3)
        x = np.linspace(0.0, 1e6, 1000)
        vals = a.evaluate(x)
        assert np.all(vals > 0)
        assert np.all(np.diff(vals) >= 0)

    def test_finite_on_wide_range(self):
        x = np.array([-1e9, -1.0, 0.0, 1.0, 1e9])
        for fam in (PowerDrift(1e3, 0.99), PowerDiffusion(1e3, 0.99), Constant(1e3)):
            assert np.all(np.isfinite(fam.evaluate(x)))

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            PowerDrift(0.0, 0.5)
        with pytest.raises(ValueError):
            PowerDrift(1.0, 1.0)
        with pytest.raises(ValueError):
            PowerDiffusion(-1.0, 0.5)
        with pytest.raises(ValueError):
            TableCoefficient((0.0, 0.0), (1.0, 2.0))


class TestDriftAsymptotics:
    def test_matching_power_drift_passes(self):
        report = check_drift_asymptotics(PowerDrift(1.0, 0.5), 1.0, 0.5)
        assert report.verdict == "pass"
        assert report.details["final_deviation"] < 1e-3

    def test_wrong_amplitude_fails_with_witness(self):
        report = check_drift_asymptotics(PowerDrift(1.0, 0.5), 2.0, 0.5)
        assert report.verdict == "fail"
        assert report.witness is not None
        assert report.witness["ratio"] == pytest.approx(0.5, rel=1e-3)

    def test_constant_against_alpha_zero_passes(self):
        assert check_drift_asymptotics(Constant(1.0), 1.0, 0.0).verdict == "pass"

    def test_wrong_exponent_fails(self):
        assert check_drift_asymptotics(PowerDrift(1.0, 0.3), 1.0, 0.5).verdict == "fail"


class TestGrowthCondition:
    def test_power_diffusion_within_envelope(self):
        report = check_growth_condition([PowerDiffusion(1.0, 0.25)], 2.0, 0.25)
        assert report.verdict == "pass"

    def test_constant_fails_at_origin(self):
        report = check_growth_condition([Constant(3.0)], 1.0, 0.0)
        assert report.verdict == "fail"
        assert report.witness["x"] == 0.0
        assert report.witness["sum_b_squared"] == 9.0
        assert report.witness["bound"] == 1.0

    def test_empty_sum_passes(self):
        assert check_growth_condition([], 1.0, 0.0).verdict == "pass"

    def test_nonpositive_C_rejected(self):
        with pytest.raises(ValueError):
            check_growth_condition([Constant(1.0)], 0.0, 0.0)

    @pytest.mark.parametrize(
        "bs,C,beta",
        [
            ([PowerDiffusion(1.0, 0.25)], 2.0, 0.25),
            ([Constant(0.5)], 1.0, 0.0),
            ([PowerDiffusion(0.5, 0.4), Constant(1.0)], 3.0, 0.4),
        ],
    )
    def test_pass_is_monotone_in_C_and_beta(self, bs, C, beta):
        grid = default_growth_grid()
        assert check_growth_condition(bs, C, beta, grid).verdict == "pass"
        for C2, b2 in [(C * 2, beta), (C, beta + 0.2), (C * 1.5, beta + 0.5)]:
            assert check_growth_condition(bs, C2, b2, grid).verdict == "pass"


class TestConditionChecklist:
    def test_smooth_families_with_gaussian_noise(self):
        report = condition_C_checklist(
            PowerDrift(1.0, 0.5),
            [PowerDiffusion(1.0, 0.25)],
            [NoiseSpec(sigma=1.0)],
        )
        assert report.verdict == "unchecked"
        assert report.details["lipschitz_coefficients"] == "yes"
        assert report.details["drift_limit_positive"] == "yes"
        assert report.details["nondegenerate_driving_noise"] == "yes"

    def test_negative_jumps_without_gaussian_component(self):
        report = condition_C_checklist(
            PowerDrift(1.0, 0.5),
            [Constant(1.0)],
            [NoiseSpec(sigma=0.0, jumps=AtomMeasure(((-1.0, 1.0),)))],
        )
        assert report.details["nondegenerate_driving_noise"] == "no"

    def test_table_drift_is_unknown(self):
        report = condition_C_checklist(
            TableCoefficient((0.0, 1.0), (1.0, 1.0)),
            [Constant(1.0)],
            [NoiseSpec(sigma=1.0)],
        )
        assert report.details["lipschitz_coefficients"] == "unknown"
        assert report.details["drift_limit_positive"] == "unknown"

    def test_never_passes_or_fails(self):
        report = condition_C_checklist(Constant(1.0), [], [])
        assert report.verdict == "unchecked"


class TestConditionReport:
    def test_fail_requires_witness(self):
        with pytest.raises(ValueError, match="witness"):
            ConditionReport(condition_id="A", verdict="fail", witness=None)

    def test_dict_round_trip_keys(self):
        r = ConditionReport(condition_id="B", verdict="pass", details={"C": 2.0})
        d = r.to_dict()
        assert set(d) == {"condition_id", "verdict", "witness", "details"}


class TestConfig:
    @pytest.mark.parametrize(
        "fam",
        [
            Constant(2.5),
            PowerDrift(1.5, 0.25),
            PowerDiffusion(0.5, 0.75),
            TableCoefficient((0.0, 1.0), (1.0, 2.0)),
        ],
    )
    def test_round_trip(self, fam):
        again = coefficient_from_config(fam.to_config())
        assert again == fam

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError, match="unknown coefficient"):
            coefficient_from_config({"kind": "spline"})
