"""수치 커널 - 로그 공간 특수함수, 부호 있는 로그 합, 재현 가능한 난수 스트림

모든 Beta 함수 비율은 지수화하기 전에 로그 공간에서 계산합니다.
"""

import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy import integrate, special

from .errors import ComputationError, InputValidationError

# 부호 있는 합에서 진단 플래그를 세우는 추정 상대 오차
CANCELLATION_TOLERANCE = 1e-12

EPS = sys.float_info.epsilon
_U64 = 1 << 64


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise InputValidationError(f"{name} must be a positive finite real, got {value!r}")
    return value


def log_gamma(x: float) -> float:
    """log Γ(x) (x > 0)"""
    x = _check_positive("x", x)
    return float(special.gammaln(x))


def log_beta(a: float, b: float) -> float:
    """log B(a, b) = log Γ(a) + log Γ(b) - log Γ(a + b)"""
    a = _check_positive("a", a)
    b = _check_positive("b", b)
    return float(special.gammaln(a) + special.gammaln(b) - special.gammaln(a + b))


def log_binom_coef(n: int, k: int) -> float:
    """log C(n, k)"""
    if k < 0 or k > n:
        raise InputValidationError(f"binomial coefficient needs 0 <= k <= n, got k={k}, n={n}")
    return float(special.gammaln(n + 1) - special.gammaln(k + 1) - special.gammaln(n - k + 1))


def log_binom_pmf(x: int, n: int, theta: float) -> float:
    """이항분포 Bin(x | n, θ)의 로그 확률

    θ ∈ {0, 1}이면 x = n·θ 에 질량 1을 두는 퇴화 분포로 처리합니다.
    """
    if n < 0 or x < 0 or x > n:
        raise InputValidationError(f"binomial pmf needs 0 <= x <= n, got x={x}, n={n}")
    theta = float(theta)
    if not 0.0 <= theta <= 1.0:
        raise InputValidationError(f"theta must lie in [0, 1], got {theta!r}")
    if theta == 0.0:
        return 0.0 if x == 0 else -math.inf
    if theta == 1.0:
        return 0.0 if x == n else -math.inf
    return log_binom_coef(n, x) + x * math.log(theta) + (n - x) * math.log1p(-theta)


def largest_remainder(weights: Sequence[float], total: int) -> tuple[int, ...]:
    """total 을 weights 에 비례하게 정수 배분 (최대 잉여법)

    동점인 잉여는 앞쪽 인덱스가 우선합니다.
    """
    if total < 0:
        raise InputValidationError(f"total must be non-negative, got {total}")
    weight_sum = float(sum(weights))
    if weight_sum <= 0.0 or any(w < 0 for w in weights):
        raise InputValidationError("weights must be non-negative with a positive sum")

    quotas = [total * w / weight_sum for w in weights]
    floors = [int(math.floor(q)) for q in quotas]
    missing = total - sum(floors)
    order = sorted(range(len(weights)), key=lambda i: (-(quotas[i] - floors[i]), i))
    for i in order[:missing]:
        floors[i] += 1
    return tuple(floors)


@dataclass(frozen=True)
class SignedLogValue:
    """부호와 로그 크기로 표현한 실수 (sign = 0 이면 정확히 0)"""
    log_magnitude: float
    sign: int
    # 합산 결과의 추정 상대 오차 (진단용)
    relative_error: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise InputValidationError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0:
            object.__setattr__(self, "log_magnitude", -math.inf)
        elif not math.isfinite(self.log_magnitude):
            raise InputValidationError("log_magnitude must be finite for a non-zero value")

    @classmethod
    def zero(cls) -> "SignedLogValue":
        return cls(-math.inf, 0)

    @classmethod
    def from_float(cls, value: float) -> "SignedLogValue":
        if value == 0.0:
            return cls.zero()
        return cls(math.log(abs(value)), 1 if value > 0 else -1)

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    @property
    def cancelled(self) -> bool:
        """치명적 상쇄 여부"""
        return self.relative_error > CANCELLATION_TOLERANCE

    def __neg__(self) -> "SignedLogValue":
        return SignedLogValue(self.log_magnitude, -self.sign, self.relative_error)


def signed_log_sum(terms: Iterable[SignedLogValue]) -> SignedLogValue:
    """부호 있는 로그 값들의 합

    최대 로그 크기를 인수로 뽑아낸 뒤 보정 합산(fsum)합니다.
    상쇄로 인한 정밀도 손실은 relative_error / cancelled 로 보고합니다.
    """
    active = [term for term in terms if term.sign != 0]
    if not active:
        return SignedLogValue.zero()

    top = max(term.log_magnitude for term in active)
    scaled = [math.exp(term.log_magnitude - top) for term in active]
    net = math.fsum(term.sign * s for term, s in zip(active, scaled))
    gross = math.fsum(scaled)

    if net == 0.0:
        return SignedLogValue(-math.inf, 0, relative_error=math.inf)

    relative_error = 2.0 * EPS * gross / abs(net)
    return SignedLogValue(
        top + math.log(abs(net)),
        1 if net > 0 else -1,
        relative_error=relative_error,
    )


def linear_sum(terms: Iterable[SignedLogValue]) -> float:
    """선형 공간 보정 합 (교차 검증 경로)"""
    return math.fsum(term.value for term in terms)


@dataclass(frozen=True)
class RngStream:
    """재현 가능한 난수 스트림 기술자

    (seed, stream_id) 쌍마다 독립된 카운터 기반(Philox) 생성기를 만듭니다.
    """
    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or not 0 <= int(value) < _U64:
                raise InputValidationError(
                    f"{name} must be an unsigned 64-bit integer, got {value!r}"
                )
            object.__setattr__(self, name, int(value))

    def generator(self) -> np.random.Generator:
        """새 생성기 (같은 기술자는 항상 같은 수열을 냄)"""
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(sequence))

    def substream(self, index: int) -> "RngStream":
        """index 번째 하위 스트림"""
        if index < 0:
            raise InputValidationError(f"substream index must be non-negative, got {index}")
        derived = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id, int(index)))
        stream_id = int(derived.generate_state(1, dtype=np.uint64)[0])
        return RngStream(self.seed, stream_id)

    def describe(self) -> dict[str, int]:
        return {"seed": self.seed, "stream_id": self.stream_id}


def log_integrate(
    log_integrand: Callable[[float], float],
    lower: float,
    upper: float,
    points: Optional[Sequence[float]] = None,
    grid_size: int = 401,
) -> float:
    """log ∫ exp(log_integrand(x)) dx (적응 구적법)

    격자 위의 최댓값으로 스케일을 맞춘 뒤 scipy.integrate.quad 로 적분합니다.
    """
    grid = np.linspace(lower, upper, grid_size)[1:-1]
    values = np.array([log_integrand(float(x)) for x in grid])
    finite = values[np.isfinite(values)]
    if finite.size == 0:
        raise ComputationError("integrand vanishes on the whole quadrature grid")
    shift = float(finite.max())

    def scaled(x: float) -> float:
        value = log_integrand(x)
        return math.exp(value - shift) if math.isfinite(value) else 0.0

    inner = sorted({float(p) for p in (points or ()) if lower < p < upper})
    result, _ = integrate.quad(
        scaled,
        lower,
        upper,
        points=inner or None,
        epsabs=0.0,
        epsrel=1e-11,
        limit=400,
    )
    if not result > 0.0:
        raise ComputationError("quadrature returned a non-positive integral")
    return shift + math.log(result)


def _logit(p: float) -> float:
    return math.log(p) - math.log1p(-p)


def log_beta_expectation(
    log_g: Callable[[float, float], float],
    a: float,
    b: float,
    breaks: Sequence[float] = (),
) -> float:
    """θ ~ Beta(a, b) 에 대한 log E[g(θ)]

    z = logit θ 위에서 적분하므로 a < 1 또는 b < 1 인 끝점 특이점이 지수 꼬리가 됩니다.
    log_g 는 (θ, 1 - θ) 를 받으며 g ≤ 1 이어야 합니다. breaks 는 g 가 꺾이는 θ 값입니다.
    """
    a = _check_positive("a", a)
    b = _check_positive("b", b)
    log_norm = log_beta(a, b)
    center = math.log(a) - math.log(b)

    def log_base(z: float) -> float:
        return a * float(special.log_expit(z)) + b * float(special.log_expit(-z))

    # 밀도는 z 에서 오목하므로 꼭짓점에서 멀어질수록 단조 감소
    peak = log_base(center)

    def tail(direction: float) -> float:
        z, step = center, 1.0
        for _ in range(200):
            z += direction * step
            if log_base(z) < peak - 90.0:
                return z
            step *= 1.5
        raise ComputationError(f"Beta({a}, {b}) tail did not decay on the logit scale")

    def log_integrand(z: float) -> float:
        log_theta = float(special.log_expit(z))
        log_theta_bar = float(special.log_expit(-z))
        value = log_g(math.exp(log_theta), math.exp(log_theta_bar))
        if value == -math.inf:
            return value
        return value + a * log_theta + b * log_theta_bar - log_norm

    points = [center, *(_logit(p) for p in breaks if 0.0 < p < 1.0)]
    return log_integrate(log_integrand, tail(-1.0), tail(1.0), points=points, grid_size=801)
