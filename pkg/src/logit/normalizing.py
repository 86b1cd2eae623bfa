# src/logit/normalizing.py
"""켤레 로지스틱 밀도의 정규화 상수 Q(z, s, h)

Q(z, s, 0) 은 Chib-Jeliazkov 방법으로, Q(z+x, s+t, h) 는 p^C(β|z, s) 표본 위의
몬테카를로 평균으로 추정합니다.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import structlog
from scipy import special

from src.core.errors import DegenerateAnchorError, InsufficientChainError
from src.core.numeric import RngStream

from .likelihood import log_likelihood, log_moment
from .sampler import McmcConfig, McmcResult, mh_sample

logger = structlog.get_logger(__name__)

MC_BATCHES = 10
_X_CHUNK = 64


def batch_means_se(values: np.ndarray, batches: int = MC_BATCHES) -> float:
    """배치 평균법에 의한 평균의 표준오차"""
    values = np.asarray(values, dtype=float)
    usable = (values.size // batches) * batches
    if usable < batches:
        return float("nan")
    means = values[:usable].reshape(batches, -1).mean(axis=1)
    return float(means.std(ddof=1) / math.sqrt(batches))


@dataclass(frozen=True)
class LogEstimate:
    """로그 척도 추정값과 몬테카를로 표준오차"""
    value: float
    mc_se: float


def normalizing_constant_cj(
    log_unnormalized: Callable[[np.ndarray], float],
    draws: np.ndarray,
    step_size: float,
    rng: RngStream,
    proposal_draws: Optional[int] = None,
    log_density: Optional[np.ndarray] = None,
) -> LogEstimate:
    """log ∫ f(β) dβ (Chib-Jeliazkov, 기준점은 표본 평균)

    f(β*)/π(β*) 에서 π(β*) 는
    E_π[α(β, β*) q(β, β*)] / E_q(β*, ·)[α(β*, β)] 로 추정합니다.
    """
    draws = np.atleast_2d(draws)
    dim = draws.shape[1]
    anchor = draws.mean(axis=0)
    log_f_anchor = log_unnormalized(anchor)
    if not math.isfinite(log_f_anchor):
        raise DegenerateAnchorError(
            f"unnormalized density at the anchor is not finite ({log_f_anchor})"
        )

    # 분자: 체인 표본에서 β -> β* 로의 채택확률 x 제안밀도
    if log_density is None:
        log_f_draws = np.array([log_unnormalized(beta) for beta in draws])
    else:
        log_f_draws = np.asarray(log_density, dtype=float)
    log_alpha_in = np.minimum(0.0, log_f_anchor - log_f_draws)
    sq_dist = ((draws - anchor) ** 2).sum(axis=1)
    log_norm = dim * (math.log(step_size) + 0.5 * math.log(2 * math.pi))
    log_q_in = -0.5 * sq_dist / step_size**2 - log_norm
    numerator_terms = log_alpha_in + log_q_in

    # 분모: β* 중심 제안 표본에서 β* -> β 의 채택확률
    count = proposal_draws or draws.shape[0]
    fresh = anchor + step_size * rng.generator().standard_normal((count, dim))
    log_f_fresh = np.array([log_unnormalized(beta) for beta in fresh])
    denominator_terms = np.minimum(0.0, log_f_fresh - log_f_anchor)

    log_num = float(special.logsumexp(numerator_terms) - math.log(numerator_terms.size))
    log_den = float(special.logsumexp(denominator_terms) - math.log(denominator_terms.size))
    if not (math.isfinite(log_num) and math.isfinite(log_den)):
        raise DegenerateAnchorError("acceptance averages at the anchor vanished")

    # 상대 표준오차 (분자는 자기상관이 있으므로 배치 평균)
    num_rel = batch_means_se(np.exp(numerator_terms - log_num))
    den_values = np.exp(denominator_terms - log_den)
    den_rel = float(den_values.std(ddof=1) / math.sqrt(den_values.size))
    mc_se = math.sqrt(num_rel**2 + den_rel**2)

    return LogEstimate(value=log_f_anchor - log_num + log_den, mc_se=mc_se)


@dataclass
class ConjugateChain:
    """p^C(β | z, s) 의 체인과 log Q(z, s, 0)"""
    z: np.ndarray
    s: np.ndarray
    matrix: np.ndarray
    draws: np.ndarray
    log_q0: LogEstimate
    acceptance_rate: float
    step_size: float

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]


def sample_conjugate(
    z: np.ndarray, s: np.ndarray, matrix: np.ndarray, config: McmcConfig
) -> ConjugateChain:
    """L(β | z, s) 를 목표로 체인을 돌리고 정규화 상수를 추정"""
    z = np.asarray(z, dtype=float)
    s = np.asarray(s, dtype=float)

    def target(beta: np.ndarray) -> float:
        return log_likelihood(beta, z, s, matrix)

    result: McmcResult = mh_sample(target, matrix.shape[1], config)
    log_q0 = normalizing_constant_cj(
        target,
        result.draws,
        result.step_size,
        config.seed.substream(1),
        proposal_draws=config.n_proposal_draws,
        log_density=result.log_density,
    )
    logger.debug(
        "conjugate chain finished",
        dim=matrix.shape[1],
        acceptance=result.acceptance_rate,
        log_q0=log_q0.value,
    )
    return ConjugateChain(
        z=z,
        s=s,
        matrix=matrix,
        draws=result.draws,
        log_q0=log_q0,
        acceptance_rate=result.acceptance_rate,
        step_size=result.step_size,
    )


def log_mean_moment_batches(
    chain: ConjugateChain,
    x: np.ndarray,
    t: np.ndarray,
    h: int,
    batches: int = MC_BATCHES,
) -> tuple[np.ndarray, np.ndarray]:
    """각 훈련 결과 x (K x N) 에 대해 log E[(Π β_j^2h) L(β | x, t)]

    반환값: 전체 평균 (K,) 과 배치별 평균 (K, batches).
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    t = np.asarray(t, dtype=float)
    draws = chain.draws
    eta = draws @ chain.matrix.T
    base = log_moment(draws, h) - np.logaddexp(0.0, eta) @ t

    usable = (draws.shape[0] // batches) * batches
    overall = np.empty(x.shape[0])
    per_batch = np.empty((x.shape[0], batches))
    for start in range(0, x.shape[0], _X_CHUNK):
        block = x[start:start + _X_CHUNK]
        log_terms = eta @ block.T + base[:, None]  # (M, K_block)
        overall[start:start + len(block)] = special.logsumexp(log_terms, axis=0) - math.log(
            draws.shape[0]
        )
        split = log_terms[:usable].reshape(batches, -1, len(block))
        per_batch[start:start + len(block)] = (
            special.logsumexp(split, axis=1) - math.log(usable // batches)
        ).T
    return overall, per_batch


def q_ratio(chain: ConjugateChain, x: np.ndarray, t: np.ndarray, h: int) -> float:
    """log Q(z + x, s + t, h) = log Q(z, s, 0) + log E_{p^C(β|z,s)}[(Π β_j^2h) L(β | x, t)]"""
    overall, _ = log_mean_moment_batches(chain, np.atleast_2d(x), t, h)
    if not np.isfinite(overall[0]):
        raise InsufficientChainError(
            "Monte Carlo average annihilated", failed_terms=[tuple(int(v) for v in x)]
        )
    return chain.log_q0.value + float(overall[0])
