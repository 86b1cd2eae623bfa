"""로지스틱 회귀 변수 선택 (켤레 사전분포, MCMC, Chib-Jeliazkov)"""

from .likelihood import (
    ConjugateHyper,
    LogitProblem,
    ModelId,
    default_conjugate_hyper,
    log_likelihood,
    log_likelihood_batch,
    log_moment,
    models_from_payload,
)
from .sampler import McmcConfig, McmcResult, mh_sample
from .normalizing import (
    ConjugateChain,
    LogEstimate,
    batch_means_se,
    log_mean_moment_batches,
    normalizing_constant_cj,
    q_ratio,
    sample_conjugate,
)
from .selection import (
    ENUMERATION_LIMIT,
    ChainCache,
    MarginalLikelihood,
    ModelEvidence,
    ModelSelection,
    TrainingDesign,
    allocate_training,
    get_chain_cache,
    log_intercept_only_marginal,
    log_m0_logit,
    marginal_likelihood_im,
    posterior_model_probs,
)

__all__ = [
    # 문제 정의와 우도
    "LogitProblem",
    "ModelId",
    "ConjugateHyper",
    "default_conjugate_hyper",
    "log_likelihood",
    "log_likelihood_batch",
    "log_moment",
    "models_from_payload",
    # MCMC
    "McmcConfig",
    "McmcResult",
    "mh_sample",
    # 정규화 상수
    "LogEstimate",
    "ConjugateChain",
    "batch_means_se",
    "normalizing_constant_cj",
    "sample_conjugate",
    "log_mean_moment_batches",
    "q_ratio",
    # 모형 선택
    "ENUMERATION_LIMIT",
    "TrainingDesign",
    "allocate_training",
    "log_m0_logit",
    "log_intercept_only_marginal",
    "ChainCache",
    "get_chain_cache",
    "MarginalLikelihood",
    "marginal_likelihood_im",
    "ModelEvidence",
    "ModelSelection",
    "posterior_model_probs",
]
