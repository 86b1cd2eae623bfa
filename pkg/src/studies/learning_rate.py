# src/studies/learning_rate.py
"""베이즈 인자의 학습 속도 시뮬레이션

귀무가설이 참이면 중앙값 log BF10 을 log n 에 회귀하여 기울기 -h-(d1-d0)/2 를,
대립가설이 참이면 중앙값 log BF01 을 n 에 회귀하여 기울기 -K* 를 확인합니다.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import structlog
from scipy import optimize, special

from src.core.errors import InputValidationError
from src.core.numeric import RngStream
from src.priors import (
    BernoulliNull,
    BinData,
    MomentPriorSpec,
    TwoPropData,
    TwoPropHyper,
    log_bf10_intrinsic_moment,
    log_bf10_intrinsic_moment2,
)
from src.services.replication_runner import run_replications

logger = structlog.get_logger(__name__)

MIN_GRID_POINTS = 5
DEFAULT_REPLICATIONS = 1000
BOOTSTRAP_RESAMPLES = 400
# 두 모형의 자유 모수 수 차이 (두 계열 모두 1)
DIMENSION_GAP = 1
_BOOTSTRAP_STREAM = 1 << 40


class ModelFamily(str, Enum):
    """시뮬레이션 대상 검정"""
    BERNOULLI = "bernoulli"
    TWO_PROPS = "two_props"


class RateRegime(str, Enum):
    """학습 속도 유형"""
    POLYNOMIAL = "polynomial-in-log-n"
    LINEAR = "linear-in-n"


@dataclass
class RatePoint:
    """표본 크기 n 에서의 복제 요약"""
    n: int
    summary_log_bf: float
    replications: int
    mean_log_bf: float = 0.0
    mean_prob_m0: float = 0.0

    def __post_init__(self):
        if self.replications < 1:
            raise InputValidationError("a rate point needs at least one replication")


@dataclass
class RateFit:
    """중앙값 로그 베이즈 인자의 선형 적합"""
    slope: float
    intercept: float
    regime: RateRegime
    expected_slope: float
    slope_ci: tuple[float, float] = (math.nan, math.nan)
    n_points: int = 0

    def covers_expected(self) -> bool:
        low, high = self.slope_ci
        return low <= self.expected_slope <= high

    def to_dict(self) -> Dict[str, Any]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "regime": self.regime.value,
            "expected_slope": self.expected_slope,
            "slope_ci_low": self.slope_ci[0],
            "slope_ci_high": self.slope_ci[1],
            "n_points": self.n_points,
        }


@dataclass
class LearningRateResult:
    family: ModelFamily
    truth: tuple[float, ...]
    points: List[RatePoint]
    fit: RateFit
    log_bf_samples: Optional[np.ndarray] = field(default=None, repr=False)

    def to_rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "family": self.family.value,
                "n": p.n,
                "median_log_bf": p.summary_log_bf,
                "mean_log_bf": p.mean_log_bf,
                "mean_prob_m0": p.mean_prob_m0,
                "replications": p.replications,
            }
            for p in self.points
        ]


def bernoulli_kl(theta: float, theta0: float) -> float:
    """KL(Bern(θ) ‖ Bern(θ0))"""
    for value in (theta, theta0):
        if not 0.0 < value < 1.0:
            raise InputValidationError(f"probabilities must lie inside (0, 1), got {value!r}")
    return float(special.rel_entr(theta, theta0) + special.rel_entr(1.0 - theta, 1.0 - theta0))


def two_props_kl_projection(theta1: float, theta2: float) -> tuple[float, float]:
    """n1 = n2 인 두 이항 모형을 θ1 = θ2 위로 KL 사영

    반환값: (공통 θ*, 관측 쌍 하나당 K*).
    """
    result = optimize.minimize_scalar(
        lambda theta: bernoulli_kl(theta1, theta) + bernoulli_kl(theta2, theta),
        bounds=(1e-12, 1.0 - 1e-12),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return float(result.x), float(result.fun)


@dataclass(frozen=True)
class _ReplicationTask:
    index: int
    n: int
    replications: int
    stream: RngStream


class _BfEvaluator:
    """계열별 log BF10 계산 (같은 자료는 한 번만)"""

    def __init__(
        self,
        family: ModelFamily,
        truth: tuple[float, ...],
        spec: Union[MomentPriorSpec, TwoPropHyper],
        null: Optional[BernoulliNull],
    ):
        self.family = family
        self.truth = truth
        self.spec = spec
        self.null = null

    def simulate(self, task: _ReplicationTask) -> np.ndarray:
        generator = task.stream.generator()
        if self.family is ModelFamily.BERNOULLI:
            ys = generator.binomial(task.n, self.truth[0], size=task.replications)
            cache = {
                int(y): log_bf10_intrinsic_moment(BinData(int(y), task.n), self.null, self.spec)
                for y in np.unique(ys)
            }
            return np.array([cache[int(y)] for y in ys])

        y1 = generator.binomial(task.n, self.truth[0], size=task.replications)
        y2 = generator.binomial(task.n, self.truth[1], size=task.replications)
        pairs = list(zip(y1.tolist(), y2.tolist()))
        cache = {
            pair: log_bf10_intrinsic_moment2(
                TwoPropData(pair[0], task.n, pair[1], task.n), self.spec
            )
            for pair in set(pairs)
        }
        return np.array([cache[pair] for pair in pairs])


def _fit_line(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept)


def learning_rate_sim(
    family: Union[ModelFamily, str],
    truth: Sequence[float],
    spec: Union[MomentPriorSpec, TwoPropHyper],
    n_grid: Sequence[int],
    replications: int,
    rng: RngStream,
    null: Optional[BernoulliNull] = None,
    max_workers: Optional[int] = None,
    bootstrap: int = BOOTSTRAP_RESAMPLES,
) -> LearningRateResult:
    """n_grid 의 각 n 에서 자료를 replications 번 생성해 log BF 를 요약하고 기울기를 적합

    Bernoulli 계열의 truth 는 (θ,), 두 비율 계열은 n1 = n2 = n 에서 (θ1, θ2) 입니다.
    """
    family = ModelFamily(family)
    truth = tuple(float(v) for v in truth)
    grid = [int(n) for n in n_grid]
    if len(grid) < MIN_GRID_POINTS:
        raise InputValidationError(f"n_grid needs at least {MIN_GRID_POINTS} points")
    if any(b <= a for a, b in zip(grid, grid[1:])) or grid[0] < 1:
        raise InputValidationError("n_grid must be positive and strictly increasing")
    if replications < 1:
        raise InputValidationError(f"replications must be positive, got {replications}")

    if family is ModelFamily.BERNOULLI:
        if len(truth) != 1 or not isinstance(spec, MomentPriorSpec) or null is None:
            raise InputValidationError("bernoulli family needs truth=(theta,), a spec and a null")
        is_null = math.isclose(truth[0], null.theta0, rel_tol=0.0, abs_tol=1e-15)
        h = spec.h
    else:
        if len(truth) != 2 or not isinstance(spec, TwoPropHyper):
            raise InputValidationError("two_props family needs truth=(theta1, theta2) and hyper")
        is_null = truth[0] == truth[1]
        h = spec.h
    for value in truth:
        if not 0.0 < value < 1.0:
            raise InputValidationError(f"true probabilities must lie inside (0, 1), got {value}")

    evaluator = _BfEvaluator(family, truth, spec, null)
    tasks = [
        _ReplicationTask(index, n, replications, rng.substream(index))
        for index, n in enumerate(grid)
    ]
    samples = np.vstack(run_replications(evaluator.simulate, tasks, max_workers))

    # 귀무 영역은 log BF10, 대립 영역은 log BF01 을 요약
    summary = samples if is_null else -samples
    points = [
        RatePoint(
            n=n,
            summary_log_bf=float(np.median(row)),
            replications=replications,
            mean_log_bf=float(row.mean()),
            mean_prob_m0=float(special.expit(-raw).mean()),
        )
        for n, row, raw in zip(grid, summary, samples)
    ]

    if is_null:
        regime = RateRegime.POLYNOMIAL
        x = np.log(np.asarray(grid, dtype=float))
        expected = -h - DIMENSION_GAP / 2
    else:
        regime = RateRegime.LINEAR
        x = np.asarray(grid, dtype=float)
        if family is ModelFamily.BERNOULLI:
            expected = -bernoulli_kl(truth[0], null.theta0)
        else:
            expected = -two_props_kl_projection(*truth)[1]

    medians = np.array([p.summary_log_bf for p in points])
    slope, intercept = _fit_line(x, medians)

    generator = rng.substream(_BOOTSTRAP_STREAM).generator()
    boot = np.empty(bootstrap)
    for b in range(bootstrap):
        picks = generator.integers(0, replications, size=summary.shape)
        resampled = np.median(np.take_along_axis(summary, picks, axis=1), axis=1)
        boot[b] = _fit_line(x, resampled)[0]
    ci = (
        (float(np.quantile(boot, 0.025)), float(np.quantile(boot, 0.975)))
        if bootstrap
        else (math.nan, math.nan)
    )

    fit = RateFit(
        slope=slope,
        intercept=intercept,
        regime=regime,
        expected_slope=expected,
        slope_ci=ci,
        n_points=len(grid),
    )
    logger.info(
        "learning rate fitted",
        family=family.value,
        regime=regime.value,
        slope=slope,
        expected=expected,
    )
    return LearningRateResult(family, truth, points, fit, log_bf_samples=samples)
