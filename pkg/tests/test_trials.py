"""임상시험 표 민감도 분석과 교차 검증 테스트"""

import math

import pytest

from src.core.errors import InputValidationError
from src.priors import TwoPropData, TwoPropHyper, default_hyper
from src.studies import (
    cross_validation,
    cross_validation_study,
    default_t_range,
    loo_forecasts,
    mean_log_score,
    model_averaged_mean,
    optimal_t_plus,
    posterior_prob_null2,
    sensitivity_analysis,
)

CONCORDANT = TwoPropData(10, 20, 10, 20)
ZERO = TwoPropData(0, 15, 0, 15)
DISCORDANT = TwoPropData(2, 20, 14, 20)


class TestTrainingRange:
    def test_optimal_t_plus(self):
        assert [optimal_t_plus(h) for h in (0, 1, 2)] == [0, 8, 14]

    def test_default_range(self):
        assert default_t_range(1) == (8, 14)


class TestSensitivity:
    def test_concordant_table_supports_null(self):
        rows = sensitivity_analysis([CONCORDANT], h_set=(0, 1))
        assert len(rows) == 2
        for row in rows:
            assert row.prob_m0_min > 0.5
            assert row.prob_m0_min <= row.prob_m0_low <= row.prob_m0_max

    def test_zero_table_nonlocal_raises_null_probability(self):
        rows = {row.h: row for row in sensitivity_analysis([ZERO], h_set=(0, 1))}
        assert rows[1].prob_m0_low > rows[0].prob_m0_low
        assert rows[1].prob_m0_high > rows[0].prob_m0_high

    def test_ordered_by_frequency_gap(self):
        rows = sensitivity_analysis(
            [DISCORDANT, CONCORDANT, TwoPropData(5, 20, 8, 20)], h_set=(0,), ids=["a", "b", "c"]
        )
        assert [row.table_id for row in rows] == ["b", "c", "a"]

    def test_explicit_ranges(self):
        rows = sensitivity_analysis([CONCORDANT], h_set=(1,), t_ranges={1: (2, 4)})
        assert (rows[0].t_low, rows[0].t_high) == (2, 4)

    def test_validation(self):
        with pytest.raises(InputValidationError):
            sensitivity_analysis([])
        with pytest.raises(InputValidationError):
            sensitivity_analysis([CONCORDANT], ids=["a", "b"])
        with pytest.raises(InputValidationError):
            sensitivity_analysis([CONCORDANT], h_set=(1,), t_ranges={1: (6, 2)})

    def test_row_dict(self):
        row = sensitivity_analysis([CONCORDANT], h_set=(0,))[0].to_dict()
        assert row["table_id"] == "1"
        assert row["frequency_gap"] == 0.0


class TestScores:
    def test_perfect_forecasts_score_zero(self):
        data = TwoPropData(3, 3, 0, 2)
        assert mean_log_score(data, {"theta1_occ": 1.0, "theta2_non": 0.0}) == 0.0

    def test_coin_forecasts(self):
        data = TwoPropData(2, 5, 3, 4)
        forecasts = dict.fromkeys(("theta1_occ", "theta1_non", "theta2_occ", "theta2_non"), 0.5)
        assert mean_log_score(data, forecasts) == pytest.approx(math.log(0.5))

    def test_empty_blocks_are_skipped(self):
        forecasts = loo_forecasts(ZERO, default_hyper(15, 15, 0, 0))
        assert set(forecasts) == {"theta1_non", "theta2_non"}

    def test_model_averaged_mean_in_unit_interval(self):
        hyper = default_hyper(20, 20, 1, 8)
        for data in (CONCORDANT, ZERO, DISCORDANT):
            assert 0.0 < model_averaged_mean(data, hyper) < 1.0

    def test_model_averaged_mean_default_prior(self):
        data = TwoPropData(3, 10, 5, 12)
        hyper = TwoPropHyper(b0=0.5, b1=0.25, b2=0.25)
        p0 = posterior_prob_null2(data, hyper)
        expected = p0 * (8.5 / 23) + (1 - p0) * (3.25 / 10.5)
        assert model_averaged_mean(data, hyper) == pytest.approx(expected, rel=1e-12)


class TestCrossValidation:
    @pytest.mark.parametrize("data", [CONCORDANT, ZERO, DISCORDANT, TwoPropData(1, 1, 0, 1)])
    def test_scores_not_positive(self, data):
        score = cross_validation(data)
        assert set(score.scores) == {0, 1, 2}
        assert all(value <= 0.0 for value in score.scores.values())
        for forecasts in score.forecasts.values():
            assert all(0.0 < p < 1.0 for p in forecasts.values())
        assert score.deltas[1] == pytest.approx(score.s1 - score.s0)

    def test_needs_reference_order(self):
        with pytest.raises(InputValidationError):
            cross_validation(CONCORDANT, h_set=(1, 2))

    def test_needs_patients(self):
        with pytest.raises(InputValidationError):
            cross_validation(TwoPropData(0, 0, 0, 0))

    def test_study_medians(self):
        tables = [CONCORDANT, ZERO, DISCORDANT]
        scores, medians = cross_validation_study(tables, ids=["c", "z", "d"])
        assert [s.table_id for s in scores] == ["c", "z", "d"]
        assert set(medians) == {1, 2}
        deltas = sorted(s.deltas[1] for s in scores)
        assert medians[1] == pytest.approx(deltas[1] * 100.0)
        row = scores[0].to_dict()
        assert {"table_id", "s0", "s1", "s2", "delta1", "delta2"} <= row.keys()
