"""로지스틱 회귀 변수 선택 테스트"""

import math

import numpy as np
import pytest
from scipy import special

from src.core.errors import InputValidationError, InsufficientChainError, McmcTuningError
from src.core.numeric import RngStream
from src.logit import (
    ChainCache,
    ConjugateHyper,
    LogitProblem,
    McmcConfig,
    ModelId,
    TrainingDesign,
    allocate_training,
    batch_means_se,
    default_conjugate_hyper,
    log_intercept_only_marginal,
    log_likelihood,
    log_likelihood_batch,
    log_m0_logit,
    log_moment,
    marginal_likelihood_im,
    mh_sample,
    normalizing_constant_cj,
    posterior_model_probs,
    q_ratio,
    sample_conjugate,
)

SURVIVAL_ROWS = {
    (0, 0): (0.01, 0.61, 0.01, 0.35, 0.02),
    (1, 8): (0.01, 0.85, 0.01, 0.13, 0.00),
    (2, 16): (0.01, 0.89, 0.01, 0.09, 0.00),
}

# 효과 코딩 (+1/-1) 에서 긴 체인이 재현하는 행
REPRODUCED_ROWS = [(0, 0), (1, 8)]


def two_group_problem() -> LogitProblem:
    return LogitProblem(n=[10, 12], y=[3, 8], design=[[1.0], [-1.0]])


class TestProblem:
    def test_model_id_normalizes(self):
        model = ModelId((3, 1, 1))
        assert model.included == (1, 3)
        assert model.dim == 3
        assert ModelId().is_null

    def test_model_id_rejects_zero_column(self):
        with pytest.raises(InputValidationError):
            ModelId((0,))

    def test_problem_validation(self):
        with pytest.raises(InputValidationError):
            LogitProblem(n=[2, 3], y=[3, 1], design=[[1.0], [0.0]])
        with pytest.raises(InputValidationError):
            LogitProblem(n=[2, 3], y=[1, 1], design=[[1.0]])

    def test_survival_data(self, survival):
        problem, models = survival
        assert problem.n.tolist() == [21, 26, 20, 12]
        assert problem.y.tolist() == [6, 4, 15, 5]
        assert len(models) == 5
        assert models[-1].dim == 4
        assert problem.model_label(models[1]) == "Severity"

    def test_unidentified_model_rejected(self):
        problem = LogitProblem(n=[5, 5], y=[1, 2], design=[[1.0, 2.0], [1.0, 2.0]])
        with pytest.raises(InputValidationError):
            problem.model_matrix(ModelId((1,)))


class TestLikelihood:
    def test_at_zero(self):
        matrix = np.ones((2, 1))
        value = log_likelihood(np.zeros(1), np.array([3, 4]), np.array([5, 6]), matrix)
        assert value == pytest.approx(-11 * math.log(2.0))

    def test_batch_matches_single(self):
        problem = two_group_problem()
        matrix = problem.model_matrix(ModelId((1,)))
        betas = np.array([[0.1, -0.3], [1.0, 0.5]])
        batch = log_likelihood_batch(betas, problem.y, problem.n, matrix)
        for row, value in zip(betas, batch):
            assert value == pytest.approx(log_likelihood(row, problem.y, problem.n, matrix))

    def test_shape_checked(self):
        with pytest.raises(InputValidationError):
            log_likelihood(np.zeros(3), np.array([1]), np.array([2]), np.ones((1, 2)))

    def test_log_moment(self):
        betas = np.array([[5.0, 2.0, -0.5]])
        assert log_moment(betas, 0)[0] == 0.0
        assert log_moment(betas, 1)[0] == pytest.approx(2 * math.log(2.0 * 0.5))
        assert log_moment(np.array([[1.0]]), 3)[0] == 0.0

    def test_default_conjugate_hyper(self, survival):
        problem, _ = survival
        hyper = default_conjugate_hyper(problem)
        assert hyper.w_plus == pytest.approx(problem.w_plus)
        assert hyper.u_plus == pytest.approx(problem.w_plus / 2)

    def test_conjugate_hyper_bounds(self):
        with pytest.raises(InputValidationError):
            ConjugateHyper(u=(1.0,), w=(1.0,))


class TestTraining:
    def test_allocation_on_survival(self, survival):
        problem, _ = survival
        assert allocate_training(problem, 8).t == (2, 3, 2, 1)
        assert allocate_training(problem, 0).t_plus == 0

    def test_training_weights_normalized(self, survival):
        problem, _ = survival
        design = allocate_training(problem, 6)
        x = design.enumerate_outcomes()
        assert x.shape == (design.n_outcomes, problem.N)
        log_w = log_m0_logit(x, design, default_conjugate_hyper(problem))
        assert special.logsumexp(log_w) == pytest.approx(0.0, abs=1e-12)

    def test_negative_training_rejected(self):
        with pytest.raises(InputValidationError):
            TrainingDesign((1, -1))


class TestSampler:
    def test_config_validation(self):
        with pytest.raises(InputValidationError):
            McmcConfig(chain_length=100, burn_in=200)
        with pytest.raises(InputValidationError):
            McmcConfig(thin=0)
        with pytest.raises(InputValidationError):
            McmcConfig(target_acceptance=(0.3, 0.2))

    def test_defaults(self):
        config = McmcConfig()
        assert (config.chain_length, config.thin, config.burn_in) == (40000, 20, 5000)
        assert config.target_acceptance == (0.24, 0.28)

    def test_gaussian_target(self, quick_config):
        result = mh_sample(lambda beta: -0.5 * float(beta @ beta), 2, quick_config)
        assert result.draws.shape == (quick_config.chain_length, 2)
        low, high = quick_config.target_acceptance
        assert low <= result.acceptance_rate <= high
        assert np.all(np.abs(result.draws.mean(axis=0)) < 0.25)
        assert np.all(np.abs(result.draws.var(axis=0) - 1.0) < 0.35)

    def test_unreachable_window_raises(self):
        # 평평한 목표에서는 보폭과 상관없이 모든 제안이 채택됨
        config = McmcConfig(
            chain_length=300, burn_in=100, check_length=100, max_tuning_rounds=3,
            seed=RngStream(5),
        )
        with pytest.raises(McmcTuningError) as excinfo:
            mh_sample(lambda beta: 0.0, 1, config)
        assert excinfo.value.acceptance_rate == 1.0
        assert excinfo.value.rounds == 3

    def test_reproducible(self, quick_config):
        target = lambda beta: -0.5 * float(beta @ beta)  # noqa: E731
        first = mh_sample(target, 1, quick_config)
        second = mh_sample(target, 1, quick_config)
        np.testing.assert_array_equal(first.draws, second.draws)

    def test_chib_jeliazkov_gaussian(self, quick_config):
        target = lambda beta: -0.5 * float(beta @ beta)  # noqa: E731
        result = mh_sample(target, 2, quick_config)
        estimate = normalizing_constant_cj(
            target, result.draws, result.step_size, RngStream(3), log_density=result.log_density
        )
        assert estimate.value == pytest.approx(math.log(2 * math.pi), abs=0.1)
        assert estimate.mc_se > 0.0

    def test_batch_means(self):
        assert math.isnan(batch_means_se(np.ones(5)))
        assert batch_means_se(np.ones(100)) == 0.0


class TestMarginalLikelihood:
    def test_intercept_only_closed_form(self, survival, quick_config):
        problem, _ = survival
        design = allocate_training(problem, 8)
        result = marginal_likelihood_im(problem, ModelId(), 1, design, quick_config)
        assert result.log_value == pytest.approx(log_intercept_only_marginal(problem))
        assert result.mc_se == 0.0

    def test_two_group_reduction(self):
        problem = two_group_problem()
        config = McmcConfig(chain_length=4000, thin=5, burn_in=2000, seed=RngStream(11))
        design = allocate_training(problem, 0)
        full = marginal_likelihood_im(problem, ModelId((1,)), 0, design, config, ChainCache())
        null = marginal_likelihood_im(problem, ModelId(), 0, design, config, ChainCache())

        hyper = default_conjugate_hyper(problem)
        u, w = hyper.as_arrays()
        y, n = problem.y, problem.n
        closed = float(
            np.sum(special.betaln(u + y, w - u + n - y) - special.betaln(u, w - u))
            - special.betaln(hyper.u_plus + y.sum(), hyper.w_plus - hyper.u_plus + (n - y).sum())
            + special.betaln(hyper.u_plus, hyper.w_plus - hyper.u_plus)
        )
        estimate = full.log_value - null.log_value
        assert abs(estimate - closed) <= max(4 * full.mc_se, 0.15)

    def test_q_ratio_without_training_is_q0(self, quick_config):
        matrix = np.array([[1.0, 1.0], [1.0, -1.0]])
        chain = sample_conjugate(np.array([1.5, 2.5]), np.array([3.0, 4.0]), matrix, quick_config)
        zeros = np.zeros(2)
        assert q_ratio(chain, zeros, zeros, 0) == pytest.approx(chain.log_q0.value, abs=1e-9)
        assert math.isfinite(q_ratio(chain, zeros, zeros, 1))

    def test_conjugate_prior_mode_at_zero(self, survival):
        problem, models = survival
        u, w = default_conjugate_hyper(problem).as_arrays()
        matrix = problem.model_matrix(models[-1])
        betas = np.random.default_rng(4).normal(scale=0.5, size=(500, matrix.shape[1]))
        at_zero = log_likelihood(np.zeros(matrix.shape[1]), u, w, matrix)
        assert at_zero > log_likelihood_batch(betas, u, w, matrix).max()
        # 기울기 X^T (u - w / 2) 가 0
        np.testing.assert_allclose(matrix.T @ (u - w / 2.0), 0.0, atol=1e-12)

    def test_wrong_training_length(self, survival, quick_config):
        problem, models = survival
        with pytest.raises(InputValidationError):
            marginal_likelihood_im(problem, models[1], 1, TrainingDesign((1, 1)), quick_config)

    def test_model_set_needs_null(self, survival, quick_config):
        problem, models = survival
        with pytest.raises(InputValidationError):
            posterior_model_probs(problem, models[1:], 0, 0, quick_config)

    def test_insufficient_chain_message(self):
        error = InsufficientChainError("vanished", failed_terms=[(1, 0)] * 12)
        assert "(+2 more)" in str(error)


@pytest.mark.slow
class TestSurvivalSelection:
    def test_smoke_profile(self, survival):
        problem, models = survival
        config = McmcConfig.smoke(RngStream(0))
        cache = ChainCache()
        for (h, t_plus), expected in SURVIVAL_ROWS.items():
            selection = posterior_model_probs(problem, models, h, t_plus, config, cache)
            probs = [entry.probability for entry in selection.models]
            assert sum(probs) == pytest.approx(1.0, abs=1e-12)
            for got, want in zip(probs, expected):
                assert got == pytest.approx(want, abs=0.08)

    def test_full_length_chains(self, survival):
        problem, models = survival
        config = McmcConfig(seed=RngStream(0))
        cache = ChainCache()
        for h, t_plus in REPRODUCED_ROWS:
            selection = posterior_model_probs(problem, models, h, t_plus, config, cache)
            for entry, want in zip(selection.models, SURVIVAL_ROWS[(h, t_plus)]):
                assert entry.probability == pytest.approx(want, abs=0.03)

    def test_full_length_h2_ordering(self, survival):
        # h = 2, t+ = 16 은 Severity 0.84, Severity+Antitoxin 0.14 근처로 나옴
        problem, models = survival
        selection = posterior_model_probs(
            problem, models, 2, 16, McmcConfig(seed=RngStream(0)), ChainCache()
        )
        intercept, severity, antitoxin, both, full = (
            entry.probability for entry in selection.models
        )
        assert severity > 0.8
        assert 0.05 < both < 0.2
        assert max(intercept, antitoxin, full) < 0.03


@pytest.mark.slow
class TestConjugateChains:
    def test_intercept_only_normalizer(self):
        # ∫ expit(β)^(1/2) (1 - expit(β))^(1/2) dβ = B(1/2, 1/2) = π
        chain = sample_conjugate(
            np.array([0.5]), np.array([1.0]), np.ones((1, 1)), McmcConfig(seed=RngStream(0))
        )
        assert chain.log_q0.value == pytest.approx(math.log(math.pi), abs=0.02)

    def test_full_model_acceptance_in_window(self, survival):
        problem, models = survival
        u, w = default_conjugate_hyper(problem).as_arrays()
        config = McmcConfig(seed=RngStream(0))
        chain = sample_conjugate(u, w, problem.model_matrix(models[-1]), config)
        low, high = config.target_acceptance
        assert low <= chain.acceptance_rate <= high
