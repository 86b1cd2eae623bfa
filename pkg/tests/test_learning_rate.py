"""베이즈 인자 학습 속도 시뮬레이션 테스트"""

import math

import numpy as np
import pytest

from src.core.errors import InputValidationError
from src.core.numeric import RngStream
from src.priors import BernoulliNull, MomentPriorSpec, TwoPropHyper
from src.studies import (
    ModelFamily,
    RateRegime,
    bernoulli_kl,
    learning_rate_sim,
    two_props_kl_projection,
)

SMALL_GRID = [50, 100, 200, 400, 800]
FULL_GRID = [50, 100, 250, 500, 1000, 2500, 5000, 10000]
NULL = BernoulliNull(0.25)


class TestDivergences:
    def test_bernoulli_kl(self):
        expected = 0.4 * math.log(0.4 / 0.25) + 0.6 * math.log(0.6 / 0.75)
        assert bernoulli_kl(0.4, 0.25) == pytest.approx(expected, rel=1e-14)
        assert bernoulli_kl(0.3, 0.3) == 0.0

    def test_projection_is_midpoint(self):
        theta, k_star = two_props_kl_projection(0.2, 0.4)
        assert theta == pytest.approx(0.3, abs=1e-6)
        assert k_star == pytest.approx(bernoulli_kl(0.2, 0.3) + bernoulli_kl(0.4, 0.3), rel=1e-8)

    def test_projection_on_null(self):
        _, k_star = two_props_kl_projection(0.35, 0.35)
        assert k_star == pytest.approx(0.0, abs=1e-10)


class TestValidation:
    def test_grid_too_short(self, rng):
        with pytest.raises(InputValidationError):
            learning_rate_sim("bernoulli", [0.25], MomentPriorSpec(), [10, 20, 30], 10, rng, NULL)

    def test_grid_not_increasing(self, rng):
        with pytest.raises(InputValidationError):
            learning_rate_sim(
                "bernoulli", [0.25], MomentPriorSpec(), [10, 20, 20, 40, 80], 10, rng, NULL
            )

    def test_family_arguments(self, rng):
        with pytest.raises(InputValidationError):
            learning_rate_sim("bernoulli", [0.25], MomentPriorSpec(), SMALL_GRID, 10, rng)
        with pytest.raises(InputValidationError):
            learning_rate_sim("two_props", [0.25], TwoPropHyper(), SMALL_GRID, 10, rng)
        with pytest.raises(ValueError):
            learning_rate_sim("poisson", [0.25], MomentPriorSpec(), SMALL_GRID, 10, rng, NULL)


class TestSimulation:
    def test_small_run_structure(self, rng):
        result = learning_rate_sim(
            "bernoulli", [0.25], MomentPriorSpec(h=1, t=8), SMALL_GRID, 40, rng, NULL,
            bootstrap=20,
        )
        assert result.family is ModelFamily.BERNOULLI
        assert result.fit.regime is RateRegime.POLYNOMIAL
        assert result.fit.expected_slope == pytest.approx(-1.5)
        assert [p.n for p in result.points] == SMALL_GRID
        assert result.log_bf_samples.shape == (len(SMALL_GRID), 40)
        assert len(result.to_rows()) == len(SMALL_GRID)
        assert result.fit.slope_ci[0] <= result.fit.slope_ci[1]

    def test_reproducible_across_worker_counts(self, rng):
        args = ("bernoulli", [0.4], MomentPriorSpec(), SMALL_GRID, 30, rng, NULL)
        single = learning_rate_sim(*args, max_workers=1, bootstrap=10)
        pooled = learning_rate_sim(*args, max_workers=4, bootstrap=10)
        np.testing.assert_array_equal(single.log_bf_samples, pooled.log_bf_samples)
        assert single.fit.slope == pooled.fit.slope

    def test_alternative_regime(self, rng):
        result = learning_rate_sim(
            "two_props", [0.2, 0.5], TwoPropHyper(h=1, t1=4, t2=4), SMALL_GRID, 20, rng,
            bootstrap=10,
        )
        assert result.fit.regime is RateRegime.LINEAR
        assert result.fit.expected_slope == pytest.approx(
            -two_props_kl_projection(0.2, 0.5)[1]
        )
        assert result.fit.slope < 0.0


@pytest.mark.slow
class TestAsymptoticSlopes:
    @pytest.mark.parametrize("h,t", [(0, 0), (1, 8), (2, 13)])
    def test_null_slope(self, h, t):
        result = learning_rate_sim(
            "bernoulli", [0.25], MomentPriorSpec(b=1.0, h=h, t=t), FULL_GRID, 1000,
            RngStream(2024), NULL,
        )
        assert result.fit.slope == pytest.approx(-(h + 0.5), abs=0.15)

    def test_alternative_slope(self):
        result = learning_rate_sim(
            "bernoulli", [0.4], MomentPriorSpec(b=1.0, h=1, t=8), FULL_GRID, 1000,
            RngStream(2024), NULL,
        )
        k_star = bernoulli_kl(0.4, 0.25)
        assert result.fit.slope == pytest.approx(-k_star, rel=0.10)
