# src/logit/selection.py
"""내재적 모멘트 사전분포에 의한 로지스틱 회귀 변수 선택

각 모형의 주변우도는 훈련표본 x ~ m0 에 대한 혼합
Π C(n_i, y_i) · Σ_x m0(x) Q(x+u+y, t+w+n, h) / Q(x+u, t+w, h)
이며, 기준 모형은 절편 모형입니다 (아래에서부터 감싸기).
"""

import itertools
import math
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import structlog
from scipy import special

from src.core.errors import InputValidationError, InsufficientChainError
from src.core.numeric import RngStream, largest_remainder

from .likelihood import ConjugateHyper, LogitProblem, ModelId, default_conjugate_hyper
from .normalizing import ConjugateChain, log_mean_moment_batches, sample_conjugate
from .sampler import McmcConfig

logger = structlog.get_logger(__name__)

# 훈련표본 혼합을 전부 나열하는 최대 항 수
ENUMERATION_LIMIT = 10_000
# 나열하지 않을 때 m0 에서 뽑는 훈련표본 수
MIXTURE_SAMPLES = 4096


@dataclass(frozen=True)
class TrainingDesign:
    """공변량 패턴별 훈련표본 크기 t_i (0 일 수 있음)"""
    t: tuple[int, ...]

    def __post_init__(self):
        t = tuple(int(v) for v in self.t)
        if any(v < 0 for v in t):
            raise InputValidationError(f"training counts must be non-negative, got {self.t!r}")
        object.__setattr__(self, "t", t)

    @property
    def t_plus(self) -> int:
        return sum(self.t)

    @property
    def n_outcomes(self) -> int:
        return math.prod(v + 1 for v in self.t)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.t, dtype=float)

    def enumerate_outcomes(self) -> np.ndarray:
        """가능한 모든 훈련 결과 x (K x N)"""
        grid = itertools.product(*(range(v + 1) for v in self.t))
        return np.array(list(grid), dtype=float).reshape(-1, len(self.t))


def allocate_training(problem: LogitProblem, t_plus: int) -> TrainingDesign:
    """t_plus 를 n_i 에 비례하게 최대 잉여법으로 배분"""
    return TrainingDesign(largest_remainder(problem.n.tolist(), t_plus))


def log_m0_logit(x: np.ndarray, design: TrainingDesign, hyper: ConjugateHyper) -> np.ndarray:
    """절편 모형 아래 훈련 결과의 로그 주변확률 (베타-이항)"""
    x = np.atleast_2d(x)
    t = design.as_array()
    u_plus, w_plus = hyper.u_plus, hyper.w_plus
    x_plus = x.sum(axis=1)
    log_coef = (special.gammaln(t + 1) - special.gammaln(x + 1) - special.gammaln(t - x + 1)).sum(
        axis=1
    )
    return (
        log_coef
        + special.betaln(u_plus + x_plus, w_plus - u_plus + design.t_plus - x_plus)
        - special.betaln(u_plus, w_plus - u_plus)
    )


def _log_data_coefficient(problem: LogitProblem) -> float:
    n, y = problem.n, problem.y
    return float(
        (special.gammaln(n + 1) - special.gammaln(y + 1) - special.gammaln(n - y + 1)).sum()
    )


def log_intercept_only_marginal(
    problem: LogitProblem, hyper: Optional[ConjugateHyper] = None
) -> float:
    """절편 모형의 주변우도 (베타-이항 닫힌 형태, h 와 t 에 무관)"""
    hyper = hyper or default_conjugate_hyper(problem)
    u_plus, w_plus = hyper.u_plus, hyper.w_plus
    y_plus, n_plus = int(problem.y.sum()), int(problem.n.sum())
    return _log_data_coefficient(problem) + float(
        special.betaln(u_plus + y_plus, w_plus - u_plus + n_plus - y_plus)
        - special.betaln(u_plus, w_plus - u_plus)
    )


class ChainCache:
    """(설계, z, s, MCMC 설정) 별 켤레 체인 캐시

    체인과 Q(z, s, 0) 은 h 와 t 에 무관하므로 한 번만 계산합니다.
    """

    def __init__(self):
        self._chains: Dict[tuple, ConjugateChain] = {}
        self._lock = threading.Lock()

    def get(
        self, matrix: np.ndarray, z: np.ndarray, s: np.ndarray, config: McmcConfig
    ) -> ConjugateChain:
        key = (
            matrix.shape,
            matrix.tobytes(),
            np.asarray(z, dtype=float).tobytes(),
            np.asarray(s, dtype=float).tobytes(),
            config.cache_key(),
        )
        with self._lock:
            cached = self._chains.get(key)
        if cached is not None:
            return cached
        chain = sample_conjugate(z, s, matrix, config)
        with self._lock:
            self._chains.setdefault(key, chain)
            return self._chains[key]

    def clear(self) -> None:
        with self._lock:
            self._chains.clear()

    def __len__(self) -> int:
        return len(self._chains)


_default_cache = ChainCache()


def get_chain_cache() -> ChainCache:
    return _default_cache


def _model_stream(seed: RngStream, model: ModelId, posterior: bool) -> RngStream:
    # 모형 나열 순서와 무관한 결정적 스트림
    index = sum(1 << j for j in model.included) * 2 + (1 if posterior else 0)
    return seed.substream(index)


@dataclass
class MarginalLikelihood:
    """모형 하나의 로그 주변우도"""
    model: ModelId
    log_value: float
    mc_se: float
    n_terms: int = 1
    sampled_mixture: bool = False
    acceptance_rates: List[float] = field(default_factory=list)


def marginal_likelihood_im(
    problem: LogitProblem,
    model: ModelId,
    h: int,
    t: TrainingDesign,
    config: McmcConfig,
    cache: Optional[ChainCache] = None,
) -> MarginalLikelihood:
    """내재적 모멘트 사전분포 아래 로그 주변우도와 몬테카를로 표준오차"""
    if len(t.t) != problem.N:
        raise InputValidationError(
            f"training design has {len(t.t)} patterns, problem has {problem.N}"
        )
    hyper = default_conjugate_hyper(problem)
    if model.is_null:
        return MarginalLikelihood(model, log_intercept_only_marginal(problem, hyper), 0.0)

    cache = cache or _default_cache
    matrix = problem.model_matrix(model)
    u, w = hyper.as_arrays()
    prior = cache.get(matrix, u, w, config.with_seed(_model_stream(config.seed, model, False)))
    posterior = cache.get(
        matrix,
        u + problem.y,
        w + problem.n,
        config.with_seed(_model_stream(config.seed, model, True)),
    )

    sampled = t.n_outcomes > ENUMERATION_LIMIT
    if sampled:
        generator = config.seed.substream(1 << 32).generator()
        theta = generator.beta(hyper.u_plus, hyper.w_plus - hyper.u_plus, size=MIXTURE_SAMPLES)
        x = generator.binomial(np.asarray(t.t)[None, :], theta[:, None]).astype(float)
        log_weights = np.full(x.shape[0], -math.log(x.shape[0]))
    else:
        x = t.enumerate_outcomes()
        log_weights = log_m0_logit(x, t, hyper)

    t_arr = t.as_array()
    post_mean, post_batches = log_mean_moment_batches(posterior, x, t_arr, h)
    prior_mean, prior_batches = log_mean_moment_batches(prior, x, t_arr, h)

    failed = ~(np.isfinite(post_mean) & np.isfinite(prior_mean))
    if failed.any():
        terms = [tuple(int(v) for v in row) for row in x[failed]]
        raise InsufficientChainError(
            f"Monte Carlo average annihilated for model {problem.model_label(model)}",
            failed_terms=terms,
        )

    log_q_ratio0 = posterior.log_q0.value - prior.log_q0.value
    mixture = float(special.logsumexp(log_weights + post_mean - prior_mean))
    log_value = _log_data_coefficient(problem) + log_q_ratio0 + mixture

    with np.errstate(invalid="ignore"):
        batch_values = special.logsumexp(
            log_weights[:, None] + post_batches - prior_batches, axis=0
        )
    finite = batch_values[np.isfinite(batch_values)]
    mixture_se = float(finite.std(ddof=1) / math.sqrt(finite.size)) if finite.size > 1 else 0.0
    if h == 0 and t.t_plus == 0:
        mixture_se = 0.0
    mc_se = math.sqrt(posterior.log_q0.mc_se**2 + prior.log_q0.mc_se**2 + mixture_se**2)

    logger.debug(
        "marginal likelihood estimated",
        model=problem.model_label(model),
        h=h,
        t_plus=t.t_plus,
        log_value=log_value,
        mc_se=mc_se,
        terms=int(x.shape[0]),
    )
    return MarginalLikelihood(
        model=model,
        log_value=log_value,
        mc_se=mc_se,
        n_terms=int(x.shape[0]),
        sampled_mixture=sampled,
        acceptance_rates=[prior.acceptance_rate, posterior.acceptance_rate],
    )


@dataclass
class ModelEvidence:
    """모형별 사후확률 보고"""
    model: ModelId
    label: str
    log_marginal: float
    mc_se: float
    probability: float
    log_probability: float


@dataclass
class ModelSelection:
    """모형 공간 위의 사후확률"""
    h: int
    t_plus: int
    training: TrainingDesign
    models: List[ModelEvidence]
    probability_se: Dict[str, float] = field(default_factory=dict)

    def probabilities(self) -> Dict[ModelId, float]:
        return {entry.model: entry.probability for entry in self.models}

    def by_label(self) -> Dict[str, float]:
        return {entry.label: entry.probability for entry in self.models}


def posterior_model_probs(
    problem: LogitProblem,
    models: Sequence[ModelId],
    h: int,
    t_plus: int,
    config: McmcConfig,
    cache: Optional[ChainCache] = None,
) -> ModelSelection:
    """모형 사전확률이 균등할 때의 사후 모형확률"""
    models = list(dict.fromkeys(models))
    if not models:
        raise InputValidationError("model set must be non-empty")
    if not any(model.is_null for model in models):
        raise InputValidationError("model set must include the intercept-only model")

    training = allocate_training(problem, t_plus)
    marginals = [
        marginal_likelihood_im(problem, model, h, training, config, cache) for model in models
    ]
    log_values = np.array([m.log_value for m in marginals])
    log_probs = log_values - special.logsumexp(log_values)
    probs = np.exp(log_probs)

    entries = [
        ModelEvidence(
            model=m.model,
            label=problem.model_label(m.model),
            log_marginal=m.log_value,
            mc_se=m.mc_se,
            probability=float(p),
            log_probability=float(lp),
        )
        for m, p, lp in zip(marginals, probs, log_probs)
    ]
    # 로그 주변우도 표준오차의 델타법 전파: dp_i = p_i (dl_i - Σ p_j dl_j)
    ses = np.array([m.mc_se for m in marginals])
    probability_se = {
        entry.label: float(
            math.sqrt(
                sum(
                    (p_i * ((1.0 if i == j else 0.0) - probs[j]) * ses[j]) ** 2
                    for j in range(len(entries))
                )
            )
        )
        for i, (entry, p_i) in enumerate(zip(entries, probs))
    }
    return ModelSelection(
        h=h, t_plus=t_plus, training=training, models=entries, probability_se=probability_se
    )
