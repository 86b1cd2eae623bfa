"""증거 분석: TWOE, 증거 곡선, 학습 속도, 임상시험 표 연구"""

from .twoe import (
    TwoeCurve,
    minimal_problem,
    twoe_bernoulli,
    twoe_logit,
    twoe_two_props,
    woe_bernoulli,
    woe_two_props,
)
from .evidence import (
    antidiagonal_minimum,
    antidiagonal_profile,
    average_posterior_curve,
    evidence_curve,
    evidence_surface,
    expected_posterior_null_bernoulli,
)
from .learning_rate import (
    LearningRateResult,
    ModelFamily,
    RateFit,
    RatePoint,
    RateRegime,
    bernoulli_kl,
    learning_rate_sim,
    two_props_kl_projection,
)
from .trials import (
    CvScore,
    SensitivityRow,
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

__all__ = [
    # TWOE
    "TwoeCurve",
    "woe_bernoulli",
    "twoe_bernoulli",
    "woe_two_props",
    "twoe_two_props",
    "minimal_problem",
    "twoe_logit",
    # 증거 곡선
    "evidence_curve",
    "expected_posterior_null_bernoulli",
    "average_posterior_curve",
    "evidence_surface",
    "antidiagonal_profile",
    "antidiagonal_minimum",
    # 학습 속도
    "ModelFamily",
    "RateRegime",
    "RatePoint",
    "RateFit",
    "LearningRateResult",
    "bernoulli_kl",
    "two_props_kl_projection",
    "learning_rate_sim",
    # 임상시험 표
    "optimal_t_plus",
    "posterior_prob_null2",
    "default_t_range",
    "SensitivityRow",
    "sensitivity_analysis",
    "model_averaged_mean",
    "loo_forecasts",
    "mean_log_score",
    "CvScore",
    "cross_validation",
    "cross_validation_study",
]
