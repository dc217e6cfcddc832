"""Tests for the test statistic, campaigns, estimator, and decision protocol."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gjb.asymptotics import CovarianceMatrix2
from gjb.distributions import SkewNormalShape, sample_sn
from gjb.errors import DegenerateSampleError, DomainError
from gjb.testing import (
    SKEWNESS_CLAMP,
    CampaignConfig,
    duplication_decision,
    empirical_shape,
    estimate_alpha,
    estimate_alpha_with_flag,
    gjb_statistic,
    rejection_size_search,
    run_test,
    simulate_alternative,
    simulate_true_model,
)


class TestEmpiricalShape:
    def test_hand_example(self):
        # mu2 = 2/3, mu3 = 0, mu4 = 2/3 -> a_n = 1.5, b_n = 0
        a_n, b_n = empirical_shape([-1.0, 0.0, 1.0])
        assert a_n == pytest.approx(1.5, rel=1e-15)
        assert b_n == 0.0

    def test_hand_example_unbiased_scaling(self):
        # ddof=1: variance scale 1 instead of 2/3
        a_n, b_n = empirical_shape([-1.0, 0.0, 1.0], ddof=1)
        assert a_n == pytest.approx(2.0 / 3.0, rel=1e-15)
        assert b_n == 0.0

    @settings(max_examples=60, deadline=None)
    @given(
        scale=st.floats(0.01, 100.0),
        shift=st.floats(-50.0, 50.0),
    )
    def test_affine_invariance(self, scale, shift):
        rng = np.random.default_rng(5)
        x = rng.standard_normal(64)
        base = empirical_shape(x)
        moved = empirical_shape(scale * x + shift)
        assert moved[0] == pytest.approx(base[0], rel=1e-9, abs=1e-9)
        assert moved[1] == pytest.approx(base[1], rel=1e-9, abs=1e-9)

    def test_duplication_invariance(self):
        x = sample_sn(SkewNormalShape(2.0), 40, seed=9)
        base = empirical_shape(x)
        doubled = empirical_shape(np.tile(x, 2))
        assert doubled[0] == pytest.approx(base[0], rel=1e-12)
        assert doubled[1] == pytest.approx(base[1], rel=1e-12)

    def test_degenerate_value_at_n_two(self):
        # with nonzero spread, (a_n, b_n) = (1, 0) for any two points
        a_n, b_n = empirical_shape([3.0, 7.0])
        assert a_n == pytest.approx(1.0, rel=1e-15)
        assert b_n == 0.0

    def test_constant_sample_rejected(self):
        with pytest.raises(DegenerateSampleError):
            empirical_shape([2.0, 2.0, 2.0])

    def test_too_small_rejected(self):
        with pytest.raises(DegenerateSampleError):
            empirical_shape([1.0])


class TestStatistic:
    def test_zero_at_null(self):
        sig = CovarianceMatrix2(24.0, 6.0, 0.0)
        assert gjb_statistic(3.0, 0.0, 3.0, 0.0, sig, 500) == 0.0

    def test_diagonal_hand_value(self):
        sig = CovarianceMatrix2(24.0, 6.0, 0.0)
        j = gjb_statistic(3.6, 0.3, 3.0, 0.0, sig, 100)
        assert j == pytest.approx(3.0, rel=1e-13)

    def test_diagonal_reduces_to_weighted_sum(self):
        sig = CovarianceMatrix2(30.0, 7.0, 0.0)
        da, db, n = 0.41, -0.17, 350
        j = gjb_statistic(3.0 + da, db, 3.0, 0.0, sig, n)
        expected = n * (da * da / sig.s11 + db * db / sig.s22)
        assert j == pytest.approx(expected, rel=1e-12)


class TestRunTest:
    def test_duplication_scaling_exact(self):
        x = sample_sn(SkewNormalShape(1.0), 25, seed=3)
        base = run_test(x, 1.0)
        for k in (2, 3, 7):
            dup = run_test(x, 1.0, duplication_factor=k)
            assert dup.j_n == k * base.j_n  # bitwise
            assert dup.n == k * base.n
            assert dup.p_value <= base.p_value

    def test_duplication_equals_literal_concatenation(self):
        x = sample_sn(SkewNormalShape(0.5), 30, seed=8)
        via_factor = run_test(x, 0.5, duplication_factor=2)
        literal = run_test(np.tile(x, 2), 0.5)
        assert literal.j_n == pytest.approx(via_factor.j_n, rel=1e-12)
        assert literal.n == via_factor.n

    def test_affine_invariance(self):
        x = sample_sn(SkewNormalShape(1.0), 200, seed=12)
        base = run_test(x, 1.0)
        moved = run_test(3.7 * x + 11.0, 1.0)
        assert moved.j_n == pytest.approx(base.j_n, abs=1e-10, rel=1e-10)
        assert moved.p_value == pytest.approx(base.p_value, abs=1e-10)

    def test_true_model_typically_accepts(self):
        x = sample_sn(SkewNormalShape(1.0), 10_000, seed=17)
        out = run_test(x, 1.0)
        assert out.p_value > 0.05
        assert out.verdict == "accept"

    def test_p_value_matches_chi2_survival(self):
        from gjb.asymptotics import chi2_survival

        x = sample_sn(SkewNormalShape(2.0), 100, seed=4)
        out = run_test(x, 2.0)
        assert out.p_value == chi2_survival(out.j_n, 2)
        assert out.j_n >= 0.0

    def test_empty_sample_rejected(self):
        with pytest.raises(DegenerateSampleError):
            run_test([], 1.0)

    def test_bad_duplication_rejected(self):
        with pytest.raises(DomainError):
            run_test([1.0, 2.0, 3.0], 1.0, duplication_factor=0)

    def test_sigma_routes_agree(self):
        x = sample_sn(SkewNormalShape(1.0), 2_000, seed=6)
        analytic = run_test(x, 1.0, sigma_route="analytic")
        mc = run_test(x, 1.0, sigma_route="monte-carlo", seed=0)
        assert mc.j_n == pytest.approx(analytic.j_n, rel=0.03)


class TestCampaigns:
    def test_deterministic(self):
        config = CampaignConfig(alpha=1.0, sample_size=10, replications=200, seed=5)
        r1 = simulate_true_model(config)
        r2 = simulate_true_model(config)
        assert np.array_equal(r1.p_values, r2.p_values)

    def test_alternative_equal_to_true_model_when_laws_match(self):
        config = CampaignConfig(alpha=1.0, sample_size=20, replications=150, seed=2)
        same = simulate_alternative(config, data_alpha=1.0)
        true = simulate_true_model(config)
        assert np.array_equal(same.p_values, true.p_values)

    def test_true_model_mean_p_is_high(self):
        config = CampaignConfig(alpha=1.0, sample_size=50, replications=400, seed=3)
        assert simulate_true_model(config).mean_p_value > 0.4

    def test_power_example_alpha_six(self):
        # hypothesis SN(6) vs standard normal data at the reference size
        config = CampaignConfig(alpha=6.0, sample_size=130, replications=300, seed=7)
        assert simulate_alternative(config).mean_p_value < 0.05

    def test_power_example_alpha_one_point_five(self):
        config = CampaignConfig(alpha=1.5, sample_size=750, replications=300, seed=7)
        assert simulate_alternative(config).mean_p_value < 0.05

    def test_config_validation(self):
        with pytest.raises(DomainError):
            CampaignConfig(alpha=1.0, sample_size=1, replications=10, seed=0)
        with pytest.raises(DomainError):
            CampaignConfig(alpha=1.0, sample_size=10, replications=0, seed=0)
        with pytest.raises(DomainError):
            CampaignConfig(alpha=1.0, sample_size=10, replications=10, seed=0,
                           sigma_route="exact")


class TestRejectionSizeSearch:
    def test_alpha_six_lands_near_reference(self):
        result = rejection_size_search(6.0, 0.05, seed=1, reps=200)
        assert not result.capped
        assert 65 <= result.n <= 260  # within a factor 2 of 130
        assert result.trace[-1][1] < 0.05

    def test_cap_reported_not_raised(self):
        result = rejection_size_search(0.15, 0.05, seed=1, cap=100, reps=100)
        assert result.capped
        assert result.n is None
        assert len(result.trace) >= 1

    def test_zero_alpha_rejected(self):
        with pytest.raises(DomainError):
            rejection_size_search(0.0, 0.05, seed=1)

    def test_bad_level_rejected(self):
        with pytest.raises(DomainError):
            rejection_size_search(1.0, 1.5, seed=1)


class TestEstimateAlpha:
    def test_consistency_large_sample(self):
        x = sample_sn(SkewNormalShape(1.0), 100_000, seed=13)
        assert abs(estimate_alpha(x) - 1.0) < 0.15

    def test_symmetric_sample_gives_zero(self):
        assert estimate_alpha([-2.0, -1.0, 1.0, 2.0]) == pytest.approx(0.0, abs=1e-9)

    def test_clamped_beyond_attainable_range(self):
        rng = np.random.default_rng(3)
        x = rng.standard_exponential(2_000)  # skewness ~ 2, outside the family
        alpha_hat, clamped = estimate_alpha_with_flag(x)
        assert clamped
        assert math.isfinite(alpha_hat)
        assert alpha_hat > 50.0

    def test_sign_equivariance(self):
        x = sample_sn(SkewNormalShape(2.0), 5_000, seed=21)
        assert estimate_alpha(-x) == pytest.approx(-estimate_alpha(x), abs=1e-10)

    def test_clamp_constant(self):
        from gjb.moments import SKEWNESS_SUP

        assert SKEWNESS_CLAMP < SKEWNESS_SUP

    def test_too_small_rejected(self):
        with pytest.raises(DegenerateSampleError):
            estimate_alpha([1.0, 2.0])


class TestDuplicationDecision:
    def test_strongly_skewed_sample_rejected(self):
        x = sample_sn(SkewNormalShape(6.0), 50, seed=1)
        outcome = duplication_decision(x, seed=0)
        assert outcome.verdict == "reject-normality"
        assert outcome.duplication_factor * 50 >= 100
        assert outcome.test.p_value < 0.05

    def test_normal_sample_accepted(self):
        g = np.random.default_rng(10)
        outcome = duplication_decision(g.standard_normal(50), seed=0)
        assert outcome.verdict == "accept-symmetry"
        assert outcome.ci_low < 0.5

    def test_near_symmetric_shape_accepted(self):
        x = sample_sn(SkewNormalShape(0.01), 200, seed=2)
        outcome = duplication_decision(x, seed=0)
        assert outcome.verdict in ("accept-symmetry", "inconclusive")

    def test_deterministic(self):
        x = sample_sn(SkewNormalShape(6.0), 50, seed=1)
        a = duplication_decision(x, seed=0)
        b = duplication_decision(x, seed=0)
        assert a == b

    def test_cap_binds(self):
        x = sample_sn(SkewNormalShape(10.0), 5, seed=40)
        outcome = duplication_decision(x, seed=0, k_cap=2)
        if outcome.verdict != "accept-symmetry":
            assert outcome.capped
            assert outcome.duplication_factor == 2

    def test_too_small_rejected(self):
        with pytest.raises(DegenerateSampleError):
            duplication_decision([1.0, 2.0], seed=0)
