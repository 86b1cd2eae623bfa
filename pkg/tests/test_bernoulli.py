"""단일 비율 내재적 모멘트 사전분포와 베이즈 인자 테스트"""

import math

import pytest
from scipy import integrate
from structlog.testing import capture_logs

from src.core import numeric
from src.core.errors import CancellationError, InputValidationError
from src.priors import (
    BernoulliNull,
    BinData,
    MomentPriorSpec,
    bernoulli,
    bf10_intrinsic_moment,
    bf10_moment,
    intrinsic_moment_prior_density,
    intrinsic_prior_density,
    k_const,
    log_bf10_intrinsic_moment,
    log_k_const,
    log_k_const_quadrature,
    moment_prior_density,
    posterior_prob_m1,
    posterior_prob_m1_from_log,
    prior_table,
    two_proportions,
)


class TestTypes:
    def test_null_bounds(self):
        with pytest.raises(InputValidationError):
            BernoulliNull(0.0)
        with pytest.raises(InputValidationError):
            BernoulliNull(1.0)

    def test_data_bounds(self):
        with pytest.raises(InputValidationError):
            BinData(13, 12)
        with pytest.raises(InputValidationError):
            BinData(-1, 3)

    def test_spec_validation(self):
        with pytest.raises(InputValidationError):
            MomentPriorSpec(b=0.0)
        with pytest.raises(InputValidationError):
            MomentPriorSpec(h=-1)
        with pytest.raises(InputValidationError):
            MomentPriorSpec(t=-2)
        assert MomentPriorSpec().is_default


class TestKConst:
    def test_h_zero_is_one(self):
        assert k_const(3.0, 4.0, 0, 0.3) == 1.0

    def test_uniform_second_moment(self):
        # E(θ - 1/2)^2 = Var = 1/12 for θ ~ U(0, 1)
        assert k_const(1, 1, 1, 0.5) == pytest.approx(1 / 12, rel=1e-13)

    def test_beta22_against_closed_form(self):
        # Var = 1/20, (mean - θ0)^2 = 1/16
        assert k_const(2, 2, 1, 0.25) == pytest.approx(0.05 + 0.0625, rel=1e-12)

    def test_matches_quadrature(self):
        series = log_k_const(2.0, 2.0, 1, 0.25)
        quadrature = log_k_const_quadrature(2.0, 2.0, 1, 0.25)
        assert series == pytest.approx(quadrature, rel=1e-10)

    @pytest.mark.parametrize("a1,a2,h,theta0", [
        (0.5, 0.5, 1, 0.5),
        (3.0, 7.0, 2, 0.1),
        (12.5, 4.0, 3, 0.8),
    ])
    def test_series_and_quadrature_agree(self, a1, a2, h, theta0):
        assert math.exp(log_k_const(a1, a2, h, theta0)) == pytest.approx(
            math.exp(log_k_const_quadrature(a1, a2, h, theta0)), rel=1e-8
        )

    def test_cancellation_escalates_to_quadrature(self):
        a = 1e4
        with pytest.raises(CancellationError):
            log_k_const(a, a, 2, 0.5, fallback=False)
        # 대칭 Beta(a, a) 의 4 차 중심적률: σ^4 (3 - 6 / (2a + 3))
        sigma2 = 1.0 / (4.0 * (2.0 * a + 1.0))
        expected = sigma2**2 * (3.0 - 6.0 / (2.0 * a + 3.0))
        assert math.exp(log_k_const(a, a, 2, 0.5)) == pytest.approx(expected, rel=1e-6)

    def test_quadrature_fallback_logs_at_debug(self):
        bernoulli.log_k_const_pair.cache_clear()
        with capture_logs() as logs:
            log_k_const(1e4, 1e4, 2, 0.5)
        levels = [entry["log_level"] for entry in logs if "cancelled" in entry["event"]]
        assert levels == ["debug"]

    def test_reflected_series_near_one(self):
        # θ 가 1 쪽에 몰리면 1 - θ 기준 합이 상쇄 없이 계산됨
        value = log_k_const(31.25, 0.25, 2, 0.999, fallback=False)
        assert value == pytest.approx(log_k_const_quadrature(31.25, 0.25, 2, 0.999), abs=1e-8)
        assert log_k_const(0.25, 31.25, 2, 0.001, fallback=False) == pytest.approx(value, rel=1e-12)

    def test_shared_machine_epsilon(self):
        assert bernoulli.EPS is numeric.EPS
        assert two_proportions.EPS is numeric.EPS

    def test_invalid_arguments(self):
        with pytest.raises(InputValidationError):
            log_k_const(0.0, 1.0, 1, 0.5)
        with pytest.raises(InputValidationError):
            log_k_const(1.0, 1.0, 1, 1.0)


class TestPriorDensity:
    def test_default_prior_is_beta(self):
        null = BernoulliNull(0.25)
        assert intrinsic_moment_prior_density(0.3, null, MomentPriorSpec(b=1.0)) == pytest.approx(
            1.0, rel=1e-13
        )

    @pytest.mark.parametrize("spec", [
        MomentPriorSpec(b=1.0, h=1, t=8),
        MomentPriorSpec(b=1.0, h=0, t=8),
        MomentPriorSpec(b=1.0, h=2, t=13),
    ])
    def test_integrates_to_one(self, spec):
        null = BernoulliNull(0.25)
        value, _ = integrate.quad(
            lambda theta: intrinsic_moment_prior_density(theta, null, spec),
            0.0,
            1.0,
            points=[0.25],
            epsabs=1e-13,
            epsrel=1e-11,
            limit=200,
        )
        assert value == pytest.approx(1.0, abs=1e-8)

    def test_nonlocal_prior_vanishes_at_null(self):
        null = BernoulliNull(0.25)
        assert intrinsic_moment_prior_density(0.25, null, MomentPriorSpec(h=1, t=8)) == 0.0
        assert moment_prior_density(0.25, null, 1.0, 2) == 0.0

    def test_intrinsic_prior_requires_h_zero(self):
        null = BernoulliNull(0.5)
        with pytest.raises(InputValidationError):
            intrinsic_prior_density(0.3, null, MomentPriorSpec(h=1))
        assert intrinsic_prior_density(0.3, null, MomentPriorSpec(h=0, t=4)) > 0.0

    def test_theta_bounds(self):
        with pytest.raises(InputValidationError):
            intrinsic_moment_prior_density(1.0, BernoulliNull(0.5), MomentPriorSpec())

    def test_prior_table_rows(self):
        specs = [MomentPriorSpec(h=0, t=0), MomentPriorSpec(h=1, t=8)]
        rows = prior_table([0.1, 0.5, 0.9], BernoulliNull(0.5), specs)
        assert len(rows) == 6
        assert {"b", "h", "t", "theta0", "theta", "density"} <= rows[0].keys()


class TestBayesFactor:
    def test_uniform_prior_closed_form(self):
        # B(2, 2) / B(1, 1) / (1/2)^2 = 2/3
        value = bf10_intrinsic_moment(BinData(1, 2), BernoulliNull(0.5), MomentPriorSpec())
        assert value == pytest.approx(2 / 3, rel=1e-13)

    def test_empty_data_gives_unit_bf(self):
        assert log_bf10_intrinsic_moment(
            BinData(0, 0), BernoulliNull(0.3), MomentPriorSpec(h=1, t=5)
        ) == pytest.approx(0.0, abs=1e-13)

    def test_moment_prior_on_extreme_data(self):
        # y = n = 2, Beta(1, 1)·(θ-1/2)^2: K(3,1,1,1/2)/K(1,1,1,1/2) · B(3,1)/B(1,1) / (1/4)
        null = BernoulliNull(0.5)
        k_post = 3 / 5 - 3 / 4 + 1 / 4  # E θ^2 - E θ + 1/4 under Beta(3, 1)
        expected = k_post / (1 / 12) * (1 / 3) / 0.25
        assert bf10_moment(BinData(2, 2), 1.0, 1.0, 1, null) == pytest.approx(expected, rel=1e-12)

    def test_h_zero_t_zero_reduces_to_conjugate(self):
        null = BernoulliNull(0.25)
        data = BinData(3, 12)
        assert log_bf10_intrinsic_moment(data, null, MomentPriorSpec()) == pytest.approx(
            math.log(bf10_moment(data, 1.0, 1.0, 0, null)), rel=1e-13
        )

    def test_nonlocal_prior_favours_null_near_theta0(self):
        null = BernoulliNull(0.25)
        data = BinData(3, 12)
        local = log_bf10_intrinsic_moment(data, null, MomentPriorSpec())
        nonlocal_ = log_bf10_intrinsic_moment(data, null, MomentPriorSpec(h=1, t=8))
        assert nonlocal_ < local

    def test_posterior_probability(self):
        assert posterior_prob_m1(1.0) == 0.5
        assert posterior_prob_m1(math.inf) == 1.0
        assert posterior_prob_m1_from_log(-800.0) == pytest.approx(0.0, abs=1e-300)
        with pytest.raises(InputValidationError):
            posterior_prob_m1(0.0)
