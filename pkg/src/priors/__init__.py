"""내재적 모멘트 사전분포와 베이즈 인자 (단일 비율, 두 비율)"""

from .bernoulli import (
    BernoulliNull,
    BinData,
    MomentPriorSpec,
    bf10_intrinsic_moment,
    bf10_moment,
    intrinsic_moment_prior_density,
    intrinsic_prior_density,
    k_const,
    log_bf10_intrinsic_moment,
    log_bf10_moment,
    log_k_const,
    log_k_const_quadrature,
    moment_prior_density,
    posterior_prob_m1,
    posterior_prob_m1_from_log,
    prior_table,
)
from .two_proportions import (
    BetaMatrix,
    TwoPropData,
    TwoPropHyper,
    bf10_intrinsic_moment2,
    bf10_moment2,
    default_hyper,
    intrinsic_moment_prior_density2,
    k_const2,
    log_bf10_intrinsic_moment2,
    log_bf10_moment2,
    log_conjugate_bf2,
    log_k_const2,
    log_k_const2_quadrature,
    log_m0_training,
    m0_training,
    posterior_mean_null,
    posterior_mean_theta1,
    posterior_mean_theta2,
    prior_correlation,
)

__all__ = [
    # 단일 비율
    "BernoulliNull",
    "BinData",
    "MomentPriorSpec",
    "k_const",
    "log_k_const",
    "log_k_const_quadrature",
    "intrinsic_prior_density",
    "intrinsic_moment_prior_density",
    "moment_prior_density",
    "prior_table",
    "bf10_moment",
    "log_bf10_moment",
    "bf10_intrinsic_moment",
    "log_bf10_intrinsic_moment",
    "posterior_prob_m1",
    "posterior_prob_m1_from_log",
    # 두 비율
    "TwoPropData",
    "BetaMatrix",
    "TwoPropHyper",
    "k_const2",
    "log_k_const2",
    "log_k_const2_quadrature",
    "m0_training",
    "log_m0_training",
    "log_conjugate_bf2",
    "bf10_moment2",
    "log_bf10_moment2",
    "bf10_intrinsic_moment2",
    "log_bf10_intrinsic_moment2",
    "default_hyper",
    "intrinsic_moment_prior_density2",
    "prior_correlation",
    "posterior_mean_theta1",
    "posterior_mean_theta2",
    "posterior_mean_null",
]
