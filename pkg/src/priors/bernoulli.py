# src/priors/bernoulli.py
"""단일 이항 비율의 점 귀무가설 검정 - 내재적 모멘트 사전분포와 베이즈 인자"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Sequence

import structlog
from scipy import special, stats

from src.core.errors import CancellationError, InputValidationError
from src.core.numeric import (
    EPS,
    SignedLogValue,
    log_beta,
    log_beta_expectation,
    log_binom_coef,
    log_binom_pmf,
    signed_log_sum,
)

logger = structlog.get_logger(__name__)

# 교대 합을 포기하고 구적법으로 넘어가는 상대 오차
ESCALATION_TOLERANCE = 1e-8


@dataclass(frozen=True)
class BernoulliNull:
    """귀무가설 θ = θ0"""
    theta0: float

    def __post_init__(self):
        theta0 = float(self.theta0)
        if not 0.0 < theta0 < 1.0:
            raise InputValidationError(f"theta0 must lie strictly inside (0, 1), got {theta0!r}")
        object.__setattr__(self, "theta0", theta0)


@dataclass(frozen=True)
class MomentPriorSpec:
    """내재적 모멘트 사전분포 (b, h, t); (h=0, t=0)은 기본 사전분포"""
    b: float = 1.0
    h: int = 0
    t: int = 0

    def __post_init__(self):
        if not float(self.b) > 0.0 or not math.isfinite(float(self.b)):
            raise InputValidationError(f"b must be positive, got {self.b!r}")
        if int(self.h) != self.h or self.h < 0:
            raise InputValidationError(f"h must be a non-negative integer, got {self.h!r}")
        if int(self.t) != self.t or self.t < 0:
            raise InputValidationError(f"t must be a non-negative integer, got {self.t!r}")
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "h", int(self.h))
        object.__setattr__(self, "t", int(self.t))

    @property
    def is_default(self) -> bool:
        return self.h == 0 and self.t == 0

    def to_dict(self) -> Dict[str, Any]:
        return {"b": self.b, "h": self.h, "t": self.t}


@dataclass(frozen=True)
class BinData:
    """관측 자료: n 번 시행 중 y 번 성공"""
    y: int
    n: int

    def __post_init__(self):
        if int(self.y) != self.y or int(self.n) != self.n:
            raise InputValidationError("y and n must be integers")
        if not 0 <= self.y <= self.n:
            raise InputValidationError(f"need 0 <= y <= n, got y={self.y}, n={self.n}")
        object.__setattr__(self, "y", int(self.y))
        object.__setattr__(self, "n", int(self.n))


def _check_beta_args(a1: float, a2: float, h: int) -> None:
    if not (a1 > 0.0 and a2 > 0.0):
        raise InputValidationError(f"Beta parameters must be positive, got ({a1}, {a2})")
    if int(h) != h or h < 0:
        raise InputValidationError(f"h must be a non-negative integer, got {h!r}")


def term_error_scale(h: int) -> float:
    """항 하나의 상대 반올림 오차 상한"""
    return 8.0 * EPS * (2 * h + 1)


def log_rising_ratio(a: float, b: float, j: int) -> float:
    """log B(a+j, b)/B(a, b) = Σ_{i<j} log((a+i)/(a+b+i))"""
    return math.fsum(math.log((a + i) / (a + b + i)) for i in range(j))


def k_const_terms(a1: float, a2: float, h: int, theta0: float) -> List[SignedLogValue]:
    """K 의 교대 이항 합 항들: C(2h,j)(-1)^j θ0^(2h-j) B(a1+j,a2)/B(a1,a2)"""
    log_theta0 = math.log(theta0)
    terms = []
    for j in range(2 * h + 1):
        log_term = (
            log_binom_coef(2 * h, j)
            + (2 * h - j) * log_theta0
            + log_rising_ratio(a1, a2, j)
        )
        terms.append(SignedLogValue(log_term, -1 if j % 2 else 1))
    return terms


def _series(terms: List[SignedLogValue], scale: float) -> tuple[float, float]:
    """(log 합, 추정 상대 오차); 합이 양수가 아니면 오차는 무한대"""
    total = signed_log_sum(terms)
    if total.sign <= 0:
        return math.nan, math.inf
    return total.log_magnitude, total.relative_error / (2.0 * EPS) * scale


def _signed_diff(theta: float, theta_bar: float, theta0: float, theta0_bar: float) -> float:
    # 1 근처에서는 여집합끼리 빼야 정밀도가 남음
    return theta - theta0 if theta < 0.5 else theta0_bar - theta_bar


def log_k_const_quadrature(
    a1: float, a2: float, h: int, theta0: float, theta0_bar: float | None = None
) -> float:
    """log E[(θ-θ0)^(2h)] 를 Beta(a1, a2) 위에서 로짓 척도 구적법으로 계산"""
    _check_beta_args(a1, a2, h)
    theta0_bar = 1.0 - theta0 if theta0_bar is None else theta0_bar

    def log_g(theta: float, theta_bar: float) -> float:
        if h == 0:
            return 0.0
        diff = _signed_diff(theta, theta_bar, theta0, theta0_bar)
        return 2 * h * math.log(abs(diff)) if diff else -math.inf

    return log_beta_expectation(log_g, a1, a2, breaks=[theta0])


@lru_cache(maxsize=65536)
def log_k_const_pair(
    a1: float, a2: float, h: int, theta0: float, theta0_bar: float, fallback: bool = True
) -> float:
    """log K 를 θ0 와 1 - θ0 를 따로 받아 계산

    K(a1, a2, h, θ0) = K(a2, a1, h, 1 - θ0) 이므로 θ 기준 교대 합과 1 - θ 기준 교대 합 중
    오차가 작은 쪽을 씁니다. 둘 다 ESCALATION_TOLERANCE 를 넘으면 구적법으로 구하거나
    (fallback=True) CancellationError 를 냅니다.
    """
    if h == 0:
        return 0.0
    scale = term_error_scale(h)
    candidates = [
        _series(k_const_terms(p1, p2, h, center), scale)
        for p1, p2, center in ((a1, a2, theta0), (a2, a1, theta0_bar))
        if center > 0.0
    ]
    log_value, relative_error = min(candidates, key=lambda pair: pair[1])
    if relative_error <= ESCALATION_TOLERANCE:
        return log_value

    if not fallback:
        raise CancellationError("alternating moment sum cancelled", relative_error)
    logger.debug(
        "alternating moment sum cancelled, using quadrature",
        a1=a1,
        a2=a2,
        h=h,
        theta0=theta0,
        relative_error=relative_error,
    )
    return log_k_const_quadrature(a1, a2, h, theta0, theta0_bar)


def log_k_const(a1: float, a2: float, h: int, theta0: float, fallback: bool = True) -> float:
    """log K(a1, a2, h, θ0)"""
    _check_beta_args(a1, a2, h)
    if not 0.0 < theta0 < 1.0:
        raise InputValidationError(f"theta0 must lie strictly inside (0, 1), got {theta0!r}")
    return log_k_const_pair(
        float(a1), float(a2), int(h), float(theta0), 1.0 - float(theta0), fallback
    )


def k_const(a1: float, a2: float, h: int, theta0: float) -> float:
    """K(a1, a2, h, θ0) = Beta(a1, a2) 아래 (θ-θ0)^(2h) 의 기댓값"""
    return math.exp(log_k_const(float(a1), float(a2), int(h), float(theta0)))


def log_intrinsic_moment_prior_density(
    theta: float, null: BernoulliNull, spec: MomentPriorSpec
) -> float:
    """내재적 모멘트 사전밀도의 로그 (θ = θ0, h ≥ 1 이면 -inf)"""
    theta = float(theta)
    if not 0.0 < theta < 1.0:
        raise InputValidationError(f"theta must lie strictly inside (0, 1), got {theta!r}")
    theta0 = null.theta0
    if spec.h and theta == theta0:
        return -math.inf

    moment = 2 * spec.h * math.log(abs(theta - theta0)) if spec.h else 0.0
    terms = []
    for x in range(spec.t + 1):
        a1, a2 = spec.b + x, spec.b + spec.t - x
        terms.append(
            moment
            + float(stats.beta.logpdf(theta, a1, a2))
            - log_k_const(a1, a2, spec.h, theta0)
            + log_binom_pmf(x, spec.t, theta0)
        )
    return float(special.logsumexp(terms))


def intrinsic_moment_prior_density(
    theta: float, null: BernoulliNull, spec: MomentPriorSpec
) -> float:
    """Σ_x (θ-θ0)^(2h) Beta(θ|b+x, b+t-x) / K(b+x, b+t-x, h, θ0) · Bin(x|t, θ0)"""
    return math.exp(log_intrinsic_moment_prior_density(theta, null, spec))


def intrinsic_prior_density(theta: float, null: BernoulliNull, spec: MomentPriorSpec) -> float:
    """내재적 사전밀도 (h = 0)"""
    if spec.h != 0:
        raise InputValidationError("intrinsic prior density is defined for h = 0 only")
    return intrinsic_moment_prior_density(theta, null, spec)


def moment_prior_density(theta: float, null: BernoulliNull, b: float, h: int) -> float:
    """기본 모멘트 사전밀도 (t = 0)"""
    return intrinsic_moment_prior_density(theta, null, MomentPriorSpec(b=b, h=h, t=0))


def prior_table(
    thetas: Sequence[float], null: BernoulliNull, specs: Sequence[MomentPriorSpec]
) -> List[Dict[str, float]]:
    """θ 격자 위의 사전밀도 표 (그래프용 행 목록)"""
    rows = []
    for spec in specs:
        for theta in thetas:
            rows.append({
                **spec.to_dict(),
                "theta0": null.theta0,
                "theta": float(theta),
                "density": intrinsic_moment_prior_density(theta, null, spec),
            })
    return rows


def log_bf10_moment(data: BinData, a1: float, a2: float, h: int, null: BernoulliNull) -> float:
    """모멘트 사전분포 Beta(a1, a2)·(θ-θ0)^(2h) 에 대한 log BF10"""
    a1, a2 = float(a1), float(a2)
    _check_beta_args(a1, a2, h)
    if data.n == 0:
        return 0.0

    y, n, theta0 = data.y, data.n, null.theta0
    post1, post2 = a1 + y, a2 + n - y
    return (
        log_k_const(post1, post2, h, theta0)
        - log_k_const(a1, a2, h, theta0)
        + log_beta(post1, post2)
        - log_beta(a1, a2)
        - y * math.log(theta0)
        - (n - y) * math.log1p(-theta0)
    )


def bf10_moment(data: BinData, a1: float, a2: float, h: int, null: BernoulliNull) -> float:
    return math.exp(log_bf10_moment(data, a1, a2, h, null))


def log_bf10_intrinsic_moment(data: BinData, null: BernoulliNull, spec: MomentPriorSpec) -> float:
    """내재적 모멘트 사전분포에 대한 log BF10 (훈련표본 x ~ Bin(t, θ0) 혼합)"""
    if spec.t == 0:
        return log_bf10_moment(data, spec.b, spec.b, spec.h, null)

    terms = [
        log_bf10_moment(data, spec.b + x, spec.b + spec.t - x, spec.h, null)
        + log_binom_pmf(x, spec.t, null.theta0)
        for x in range(spec.t + 1)
    ]
    return float(special.logsumexp(terms))


def bf10_intrinsic_moment(data: BinData, null: BernoulliNull, spec: MomentPriorSpec) -> float:
    return math.exp(log_bf10_intrinsic_moment(data, null, spec))


def posterior_prob_m1(bf10: float) -> float:
    """P(M1 | y) = BF10 / (1 + BF10) (모형 사전확률 동일)"""
    if not bf10 > 0.0:
        raise InputValidationError(f"bf10 must be positive, got {bf10!r}")
    if math.isinf(bf10):
        return 1.0
    return bf10 / (1.0 + bf10)


def posterior_prob_m1_from_log(log_bf10: float) -> float:
    return float(special.expit(log_bf10))
