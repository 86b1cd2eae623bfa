"""최소 자료 TWOE 와 훈련표본 크기 선택 테스트"""

import pytest

from src.core.errors import InputValidationError
from src.core.numeric import RngStream
from src.logit import ChainCache, McmcConfig
from src.studies import (
    TwoeCurve,
    minimal_problem,
    twoe_bernoulli,
    twoe_logit,
    twoe_two_props,
    woe_bernoulli,
    woe_two_props,
)


class TestCurve:
    def test_smallest_argmax_wins(self):
        curve = TwoeCurve.from_values([0, 1, 2], [1.0, 1.0 - 1e-12, 0.5])
        assert curve.argmax_set == [0, 1]
        assert curve.t_star == 0

    def test_empty_grid_rejected(self):
        with pytest.raises(InputValidationError):
            TwoeCurve.from_values([], [])

    def test_rows_mark_t_star(self):
        curve = twoe_bernoulli(b=1.0, h=1, t_max=12)
        rows = curve.to_rows()
        assert len(rows) == 13
        assert [row["t"] for row in rows if row["is_t_star"]] == [8]
        assert {"woe_0", "woe_1", "woe_2"} <= rows[0].keys()


class TestBernoulli:
    @pytest.mark.parametrize("h,t_star", [(1, 8), (2, 13)])
    def test_optimal_training_size(self, h, t_star):
        assert twoe_bernoulli(b=1.0, h=h).t_star == t_star

    def test_h_zero_is_tied(self):
        curve = twoe_bernoulli(b=1.0, h=0)
        assert curve.argmax_set == [0, 1]
        assert curve.t_star == 0

    def test_woe_symmetry(self):
        woe = woe_bernoulli(1.0, 1, 30)
        for left, right in zip(woe["0"], woe["2"]):
            assert left == pytest.approx(right, rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("h", [0, 1, 2])
    def test_woe_monotone(self, h):
        woe = woe_bernoulli(1.0, h, 40)
        assert all(b >= a - 1e-12 for a, b in zip(woe["1"], woe["1"][1:]))
        assert all(b <= a + 1e-12 for a, b in zip(woe["0"], woe["0"][1:]))

    def test_deterministic(self):
        assert twoe_bernoulli(h=2).twoe == twoe_bernoulli(h=2).twoe

    def test_negative_t_max(self):
        with pytest.raises(InputValidationError):
            woe_bernoulli(1.0, 1, -1)


class TestTwoProportions:
    @pytest.mark.parametrize("h,t_star", [(0, 0), (1, 8), (2, 14)])
    def test_optimal_training_size(self, h, t_star):
        assert twoe_two_props(b0=0.5, h=h).t_star == t_star

    def test_odd_grid_rejected(self):
        with pytest.raises(InputValidationError):
            woe_two_props(0.5, 1, 7)

    def test_outcome_symmetry(self):
        woe = woe_two_props(0.5, 1, 20)
        assert set(woe) == {"00", "01", "10", "11"}
        for left, right in zip(woe["01"], woe["10"]):
            assert left == pytest.approx(right, rel=1e-12, abs=1e-12)


class TestLogit:
    def test_minimal_problem(self, survival):
        problem, _ = survival
        base = minimal_problem(problem)
        assert base.n.tolist() == [1, 1, 1, 1]
        assert base.design.shape == problem.design.shape

    def test_empty_grid_rejected(self, survival, quick_config):
        problem, _ = survival
        with pytest.raises(InputValidationError):
            twoe_logit(problem, 1, [], quick_config)

    @pytest.mark.slow
    def test_noisy_curve(self, survival):
        problem, _ = survival
        config = McmcConfig.smoke(RngStream(0))
        curve = twoe_logit(problem, 1, [0, 4], config, cache=ChainCache())
        assert curve.noisy
        assert len(curve.woe) == 2**problem.N
        assert len(curve.mc_se) == 2
        assert curve.value_at(0) < curve.value_at(4)
