# src/priors/two_proportions.py
"""두 독립 이항 비율의 동일성 검정 (θ1 = θ2)"""

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Any, Dict, List

import numpy as np
import structlog
from scipy import special, stats

from src.core.errors import CancellationError, InputValidationError
from src.core.numeric import (
    EPS,
    RngStream,
    SignedLogValue,
    largest_remainder,
    log_beta,
    log_beta_expectation,
    log_binom_coef,
    signed_log_sum,
)

from .bernoulli import (
    ESCALATION_TOLERANCE,
    log_k_const_pair,
    log_rising_ratio,
    term_error_scale,
)

logger = structlog.get_logger(__name__)

DEFAULT_B0 = 0.5
MIN_CORRELATION_SAMPLES = 1000
LOW_ACCEPTANCE = 1e-3


def _check_count(name: str, value: int) -> int:
    if int(value) != value or value < 0:
        raise InputValidationError(f"{name} must be a non-negative integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class TwoPropData:
    """두 그룹의 관측 자료 (y1/n1, y2/n2)"""
    y1: int
    n1: int
    y2: int
    n2: int

    def __post_init__(self):
        for name in ("y1", "n1", "y2", "n2"):
            object.__setattr__(self, name, _check_count(name, getattr(self, name)))
        if self.y1 > self.n1:
            raise InputValidationError(f"need y1 <= n1, got y1={self.y1}, n1={self.n1}")
        if self.y2 > self.n2:
            raise InputValidationError(f"need y2 <= n2, got y2={self.y2}, n2={self.n2}")

    @property
    def n_plus(self) -> int:
        return self.n1 + self.n2

    @property
    def y_plus(self) -> int:
        return self.y1 + self.y2

    @property
    def frequency_gap(self) -> float:
        """|y1/n1 - y2/n2| (빈 그룹은 0 으로 취급)"""
        f1 = self.y1 / self.n1 if self.n1 else 0.0
        f2 = self.y2 / self.n2 if self.n2 else 0.0
        return abs(f1 - f2)

    def swapped(self) -> "TwoPropData":
        return TwoPropData(self.y2, self.n2, self.y1, self.n1)


@dataclass(frozen=True)
class BetaMatrix:
    """(θ1, θ2) 에 대한 독립 Beta(a11, a12) ⊗ Beta(a21, a22) 모수"""
    a11: float
    a12: float
    a21: float
    a22: float

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            value = float(getattr(self, name))
            if not value > 0.0 or not math.isfinite(value):
                raise InputValidationError(f"{name} must be strictly positive, got {value!r}")
            object.__setattr__(self, name, value)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a11, self.a12, self.a21, self.a22)

    def updated(self, data: TwoPropData) -> "BetaMatrix":
        """자료로 갱신된 사후 모수"""
        return BetaMatrix(
            self.a11 + data.y1,
            self.a12 + data.n1 - data.y1,
            self.a21 + data.y2,
            self.a22 + data.n2 - data.y2,
        )

    def swapped(self) -> "BetaMatrix":
        return BetaMatrix(self.a21, self.a22, self.a11, self.a12)


@dataclass(frozen=True)
class TwoPropHyper:
    """두 비율 문제의 초모수 (b0, b1, b2, h, t1, t2)"""
    b0: float = DEFAULT_B0
    b1: float = DEFAULT_B0 / 2
    b2: float = DEFAULT_B0 / 2
    h: int = 0
    t1: int = 0
    t2: int = 0

    def __post_init__(self):
        for name in ("b0", "b1", "b2"):
            value = float(getattr(self, name))
            if not value > 0.0 or not math.isfinite(value):
                raise InputValidationError(f"{name} must be positive, got {value!r}")
            object.__setattr__(self, name, value)
        for name in ("h", "t1", "t2"):
            object.__setattr__(self, name, _check_count(name, getattr(self, name)))
        if not math.isclose(self.b1 + self.b2, self.b0, rel_tol=1e-12):
            logger.debug("b1 + b2 differs from b0", b0=self.b0, b1=self.b1, b2=self.b2)

    @property
    def t_plus(self) -> int:
        return self.t1 + self.t2

    def training_matrix(self, x1: int, x2: int) -> BetaMatrix:
        """훈련표본 (x1, x2) 로 갱신된 Beta 모수"""
        return BetaMatrix(
            self.b1 + x1, self.b1 + self.t1 - x1, self.b2 + x2, self.b2 + self.t2 - x2
        )

    def swapped(self) -> "TwoPropHyper":
        return replace(self, b1=self.b2, b2=self.b1, t1=self.t2, t2=self.t1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "b0": self.b0, "b1": self.b1, "b2": self.b2,
            "h": self.h, "t1": self.t1, "t2": self.t2,
        }


def _k_const2_terms(a: tuple[float, float, float, float], h: int) -> List[SignedLogValue]:
    a11, a12, a21, a22 = a
    terms = []
    for j in range(2 * h + 1):
        log_term = (
            log_binom_coef(2 * h, j)
            + log_rising_ratio(a11, a12, j)
            + log_rising_ratio(a21, a22, 2 * h - j)
        )
        terms.append(SignedLogValue(log_term, -1 if j % 2 else 1))
    return terms


def log_k_const2_quadrature(a: BetaMatrix, h: int) -> float:
    """θ1 에 대한 바깥 구적법: ∫ Beta(θ1|a11,a12) K(a21, a22, h, θ1) dθ1

    안쪽 K 는 θ1 과 1 - θ1 을 따로 넘겨 1 근처에서도 정밀도를 유지합니다.
    """
    def log_g(theta1: float, theta1_bar: float) -> float:
        return log_k_const_pair(a.a21, a.a22, h, theta1, theta1_bar, True)

    return log_beta_expectation(log_g, a.a11, a.a12)


@lru_cache(maxsize=65536)
def _log_k_const2(a: tuple[float, float, float, float], h: int, fallback: bool) -> float:
    if h == 0:
        return 0.0
    a11, a12, a21, a22 = a
    # (1-θ1) - (1-θ2) = θ2 - θ1 이라 성분을 뒤집어도 짝수 모멘트는 같음
    best_error = math.inf
    best_value = math.nan
    for basis in (a, (a12, a11, a22, a21)):
        total = signed_log_sum(_k_const2_terms(basis, h))
        if total.sign <= 0:
            continue
        relative_error = total.relative_error / (2.0 * EPS) * 2.0 * term_error_scale(h)
        if relative_error < best_error:
            best_error, best_value = relative_error, total.log_magnitude
    if best_error <= ESCALATION_TOLERANCE:
        return best_value

    if not fallback:
        raise CancellationError("alternating two-sample moment sum cancelled", best_error)
    logger.debug(
        "alternating two-sample moment sum cancelled, using quadrature",
        a=a,
        h=h,
        relative_error=best_error,
    )
    return log_k_const2_quadrature(BetaMatrix(*a), h)


def log_k_const2(a: BetaMatrix, h: int, fallback: bool = True) -> float:
    """log K(a, h) = log E[(θ1-θ2)^(2h)]"""
    h = _check_count("h", h)
    return _log_k_const2(a.as_tuple(), h, fallback)


def k_const2(a: BetaMatrix, h: int) -> float:
    return math.exp(log_k_const2(a, h))


def log_m0_training(x1: int, x2: int, t1: int, t2: int, b0: float) -> float:
    """M0 (공통 θ ~ Beta(b0, b0)) 아래 훈련 결과 (x1, x2) 의 로그 주변확률"""
    if not (0 <= x1 <= t1 and 0 <= x2 <= t2):
        raise InputValidationError(f"training outcome ({x1}, {x2}) outside 0..({t1}, {t2})")
    return (
        log_binom_coef(t1, x1)
        + log_binom_coef(t2, x2)
        + log_beta(b0 + x1 + x2, b0 + t1 + t2 - x1 - x2)
        - log_beta(b0, b0)
    )


def m0_training(x1: int, x2: int, t1: int, t2: int, b0: float) -> float:
    return math.exp(log_m0_training(x1, x2, t1, t2, b0))


def log_m0_training_table(t1: int, t2: int, b0: float) -> np.ndarray:
    """(t1+1) x (t2+1) 크기의 log m0 표"""
    table = np.empty((t1 + 1, t2 + 1))
    for x1 in range(t1 + 1):
        for x2 in range(t2 + 1):
            table[x1, x2] = log_m0_training(x1, x2, t1, t2, b0)
    return table


def log_conjugate_bf2(data: TwoPropData, a: BetaMatrix, b0: float) -> float:
    """켤레 사전분포 Beta(a) 대 M0 Beta(b0, b0) 의 log BF10"""
    post = a.updated(data)
    return (
        log_beta(b0, b0)
        + log_beta(post.a11, post.a12)
        + log_beta(post.a21, post.a22)
        - log_beta(a.a11, a.a12)
        - log_beta(a.a21, a.a22)
        - log_beta(b0 + data.y_plus, b0 + data.n_plus - data.y_plus)
    )


def log_bf10_moment2(data: TwoPropData, a: BetaMatrix, h: int, b0: float) -> float:
    if data.n_plus == 0:
        return 0.0
    return (
        log_k_const2(a.updated(data), h)
        - log_k_const2(a, h)
        + log_conjugate_bf2(data, a, b0)
    )


def bf10_moment2(data: TwoPropData, a: BetaMatrix, h: int, b0: float) -> float:
    return math.exp(log_bf10_moment2(data, a, h, b0))


def log_bf10_intrinsic_moment2(data: TwoPropData, hyper: TwoPropHyper) -> float:
    """훈련표본 (x1, x2) ~ m0 에 대한 이중 혼합 log BF10"""
    terms = [
        log_bf10_moment2(data, hyper.training_matrix(x1, x2), hyper.h, hyper.b0)
        + log_m0_training(x1, x2, hyper.t1, hyper.t2, hyper.b0)
        for x1 in range(hyper.t1 + 1)
        for x2 in range(hyper.t2 + 1)
    ]
    return float(special.logsumexp(terms))


def bf10_intrinsic_moment2(data: TwoPropData, hyper: TwoPropHyper) -> float:
    return math.exp(log_bf10_intrinsic_moment2(data, hyper))


def default_hyper(
    n1: int, n2: int, h: int, t_plus: int, b0: float = DEFAULT_B0
) -> TwoPropHyper:
    """b0 = 1/2, b_i = b0·n_i/(n1+n2), t 는 최대 잉여법으로 t_plus 를 배분"""
    n1, n2 = _check_count("n1", n1), _check_count("n2", n2)
    if n1 + n2 == 0:
        raise InputValidationError("default hyperparameters need n1 + n2 > 0")
    t1, t2 = largest_remainder((n1, n2), _check_count("t_plus", t_plus))
    b1 = b0 * n1 / (n1 + n2)
    b2 = b0 * n2 / (n1 + n2)
    if b1 == 0.0 or b2 == 0.0:
        raise InputValidationError("default hyperparameters need both groups non-empty")
    return TwoPropHyper(b0=b0, b1=b1, b2=b2, h=h, t1=t1, t2=t2)


def log_intrinsic_moment_prior_density2(
    theta1: float, theta2: float, hyper: TwoPropHyper
) -> float:
    for value in (theta1, theta2):
        if not 0.0 < value < 1.0:
            raise InputValidationError(f"theta must lie strictly inside (0, 1), got {value!r}")
    if hyper.h and theta1 == theta2:
        return -math.inf

    moment = 2 * hyper.h * math.log(abs(theta1 - theta2)) if hyper.h else 0.0
    terms = []
    for x1 in range(hyper.t1 + 1):
        for x2 in range(hyper.t2 + 1):
            a = hyper.training_matrix(x1, x2)
            terms.append(
                log_m0_training(x1, x2, hyper.t1, hyper.t2, hyper.b0)
                + moment
                + float(stats.beta.logpdf(theta1, a.a11, a.a12))
                + float(stats.beta.logpdf(theta2, a.a21, a.a22))
                - log_k_const2(a, hyper.h)
            )
    return float(special.logsumexp(terms))


def intrinsic_moment_prior_density2(theta1: float, theta2: float, hyper: TwoPropHyper) -> float:
    """(θ1, θ2) 의 내재적 모멘트 사전밀도 (θ1 = θ2, h ≥ 1 이면 0)"""
    return math.exp(log_intrinsic_moment_prior_density2(theta1, theta2, hyper))


def prior_correlation(hyper: TwoPropHyper, samples: int, rng: RngStream) -> float:
    """내재적 모멘트 사전분포 아래 corr(θ1, θ2) 의 몬테카를로 추정

    (x1, x2) ~ m0 를 뽑고, 해당 성분의 Beta 곱에서 제안한 (θ1, θ2) 를
    확률 (θ1-θ2)^(2h) 로 채택합니다.
    """
    if samples < MIN_CORRELATION_SAMPLES:
        raise InputValidationError(
            f"prior correlation needs at least {MIN_CORRELATION_SAMPLES} samples, got {samples}"
        )
    generator = rng.generator()

    log_weights = log_m0_training_table(hyper.t1, hyper.t2, hyper.b0).ravel()
    weights = np.exp(log_weights - special.logsumexp(log_weights))
    components = generator.choice(weights.size, size=samples, p=weights / weights.sum())
    counts = np.bincount(components, minlength=weights.size)

    theta1 = np.empty(samples)
    theta2 = np.empty(samples)
    filled = 0
    proposed = 0
    for index, count in enumerate(counts):
        if count == 0:
            continue
        x1, x2 = divmod(index, hyper.t2 + 1)
        a = hyper.training_matrix(x1, x2)
        expected_rate = k_const2(a, hyper.h)
        accepted1: List[np.ndarray] = []
        accepted2: List[np.ndarray] = []
        got = 0
        while got < count:
            batch = int(min(1_000_000, math.ceil(1.2 * (count - got) / expected_rate) + 16))
            p1 = generator.beta(a.a11, a.a12, size=batch)
            p2 = generator.beta(a.a21, a.a22, size=batch)
            proposed += batch
            if hyper.h:
                keep = generator.random(batch) < (p1 - p2) ** (2 * hyper.h)
                p1, p2 = p1[keep], p2[keep]
            accepted1.append(p1)
            accepted2.append(p2)
            got += p1.size
        theta1[filled:filled + count] = np.concatenate(accepted1)[:count]
        theta2[filled:filled + count] = np.concatenate(accepted2)[:count]
        filled += count

    acceptance = samples / proposed
    if acceptance < LOW_ACCEPTANCE:
        logger.warning("rejection sampler acceptance low", acceptance=acceptance, h=hyper.h)
    return float(np.corrcoef(theta1, theta2)[0, 1])


def posterior_mean_theta1(data: TwoPropData, hyper: TwoPropHyper) -> float:
    """M1 아래 θ1 의 사후평균 (훈련표본 혼합 포함)

    혼합 성분 x 의 가중치는 m0(x)·BF10(data | a_x) 에 비례하고, 성분 안에서는
    E[θ1] = a11/(a11+a12) · K(a11+1, a12, a21, a22; h) / K(a; h) 입니다.
    """
    log_weights = []
    means = []
    for x1 in range(hyper.t1 + 1):
        for x2 in range(hyper.t2 + 1):
            a = hyper.training_matrix(x1, x2)
            post = a.updated(data)
            log_weights.append(
                log_bf10_moment2(data, a, hyper.h, hyper.b0)
                + log_m0_training(x1, x2, hyper.t1, hyper.t2, hyper.b0)
            )
            shifted = BetaMatrix(post.a11 + 1.0, post.a12, post.a21, post.a22)
            means.append(
                post.a11 / (post.a11 + post.a12)
                * math.exp(log_k_const2(shifted, hyper.h) - log_k_const2(post, hyper.h))
            )
    log_weights_arr = np.asarray(log_weights)
    weights = np.exp(log_weights_arr - special.logsumexp(log_weights_arr))
    return float(np.dot(weights, means))


def posterior_mean_theta2(data: TwoPropData, hyper: TwoPropHyper) -> float:
    return posterior_mean_theta1(data.swapped(), hyper.swapped())


def posterior_mean_null(data: TwoPropData, b0: float = DEFAULT_B0) -> float:
    """M0 아래 공통 θ 의 사후평균"""
    return (b0 + data.y_plus) / (2.0 * b0 + data.n_plus)
