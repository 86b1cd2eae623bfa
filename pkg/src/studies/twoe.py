# src/studies/twoe.py
"""훈련표본 크기 선택 - 최소 자료 위의 총 증거 가중치(TWOE) 최대화"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import structlog

from src.core.errors import InputValidationError
from src.logit import (
    ChainCache,
    LogitProblem,
    McmcConfig,
    ModelId,
    allocate_training,
    marginal_likelihood_im,
)
from src.priors import (
    BernoulliNull,
    BinData,
    MomentPriorSpec,
    TwoPropData,
    TwoPropHyper,
    log_bf10_intrinsic_moment,
    log_bf10_intrinsic_moment2,
)

logger = structlog.get_logger(__name__)

# argmax 집합에 포함되는 최댓값과의 차이
ARGMAX_TOLERANCE = 1e-9
DEFAULT_T_MAX = 60


@dataclass
class TwoeCurve:
    """t -> TWOE(t) 곡선과 argmax 집합, 선택된 t*"""
    grid: List[int]
    twoe: List[float]
    argmax_set: List[int]
    t_star: int
    family: str = ""
    h: int = 0
    # 몬테카를로 추정이라 argmax 가 실행마다 달라질 수 있음
    noisy: bool = False
    woe: Dict[str, List[float]] = field(default_factory=dict)
    mc_se: List[float] = field(default_factory=list)

    @classmethod
    def from_values(
        cls,
        grid: Sequence[int],
        values: Sequence[float],
        tolerance: float = ARGMAX_TOLERANCE,
        **kwargs: Any,
    ) -> "TwoeCurve":
        """최댓값에서 tolerance 이내인 t 중 가장 작은 값을 t* 로 선택"""
        if not grid or len(grid) != len(values):
            raise InputValidationError("TWOE grid must be non-empty and match the values")
        best = max(values)
        argmax_set = sorted(t for t, v in zip(grid, values) if v >= best - tolerance)
        return cls(
            grid=list(grid),
            twoe=[float(v) for v in values],
            argmax_set=argmax_set,
            t_star=argmax_set[0],
            **kwargs,
        )

    def value_at(self, t: int) -> float:
        return self.twoe[self.grid.index(t)]

    def to_rows(self) -> List[Dict[str, Any]]:
        rows = []
        for i, (t, value) in enumerate(zip(self.grid, self.twoe)):
            row: Dict[str, Any] = {"family": self.family, "h": self.h, "t": t, "twoe": value}
            for outcome, series in self.woe.items():
                row[f"woe_{outcome}"] = series[i]
            row["is_t_star"] = t == self.t_star
            rows.append(row)
        return rows


def woe_bernoulli(b: float, h: int, t_max: int = DEFAULT_T_MAX) -> Dict[str, List[float]]:
    """최소 자료 n = 2, θ0 = 1/2 에서 결과 y 별 WOE_y(t) = log BF10(y | b, h, t)"""
    if t_max < 0:
        raise InputValidationError(f"t_max must be non-negative, got {t_max}")
    null = BernoulliNull(0.5)
    return {
        str(y): [
            log_bf10_intrinsic_moment(BinData(y, 2), null, MomentPriorSpec(b=b, h=h, t=t))
            for t in range(t_max + 1)
        ]
        for y in (0, 1, 2)
    }


def twoe_bernoulli(b: float = 1.0, h: int = 1, t_max: int = DEFAULT_T_MAX) -> TwoeCurve:
    woe = woe_bernoulli(b, h, t_max)
    grid = list(range(t_max + 1))
    totals = [sum(series[i] for series in woe.values()) for i in range(len(grid))]
    curve = TwoeCurve.from_values(grid, totals, family="bernoulli", h=h, woe=woe)
    logger.debug("bernoulli twoe computed", b=b, h=h, t_star=curve.t_star)
    return curve


def _minimal_hyper(b0: float, h: int, t_plus: int) -> TwoPropHyper:
    return TwoPropHyper(b0=b0, b1=b0 / 2, b2=b0 / 2, h=h, t1=t_plus // 2, t2=t_plus // 2)


def woe_two_props(
    b0: float, h: int, t_plus_max: int = DEFAULT_T_MAX
) -> Dict[str, List[float]]:
    """최소 자료 n1 = n2 = 1 의 네 결과별 WOE (짝수 t+ 만)"""
    if t_plus_max < 0 or t_plus_max % 2:
        raise InputValidationError(
            f"t_plus_max must be a non-negative even count, got {t_plus_max}"
        )
    grid = range(0, t_plus_max + 1, 2)
    return {
        f"{y1}{y2}": [
            log_bf10_intrinsic_moment2(TwoPropData(y1, 1, y2, 1), _minimal_hyper(b0, h, t))
            for t in grid
        ]
        for y1, y2 in itertools.product((0, 1), repeat=2)
    }


def twoe_two_props(b0: float = 0.5, h: int = 1, t_plus_max: int = DEFAULT_T_MAX) -> TwoeCurve:
    woe = woe_two_props(b0, h, t_plus_max)
    grid = list(range(0, t_plus_max + 1, 2))
    totals = [sum(series[i] for series in woe.values()) for i in range(len(grid))]
    return TwoeCurve.from_values(grid, totals, family="two_props", h=h, woe=woe)


def minimal_problem(problem: LogitProblem) -> LogitProblem:
    """n_i ≡ 1 인 최소 자료 문제 (설계는 그대로)"""
    ones = np.ones(problem.N, dtype=int)
    return problem.with_counts(np.zeros(problem.N, dtype=int), ones)


def twoe_logit(
    problem: LogitProblem,
    h: int,
    t_plus_grid: Sequence[int],
    config: McmcConfig,
    full_model: Optional[ModelId] = None,
    cache: Optional[ChainCache] = None,
) -> TwoeCurve:
    """최소 자료의 2^N 결과 전체에서 완전 모형 대 절편 모형 TWOE

    몬테카를로 추정이므로 noisy=True 로 표시합니다.
    """
    grid = [int(t) for t in t_plus_grid]
    if not grid:
        raise InputValidationError("t_plus grid must be non-empty")
    full_model = full_model or ModelId(tuple(range(1, problem.k + 1)), label="full")
    null_model = ModelId(())
    base = minimal_problem(problem)

    totals = []
    errors = []
    woe: Dict[str, List[float]] = {}
    for t_plus in grid:
        training = allocate_training(base, t_plus)
        total = 0.0
        variance = 0.0
        for outcome in itertools.product((0, 1), repeat=problem.N):
            data = base.with_counts(outcome, np.ones(problem.N, dtype=int))
            full = marginal_likelihood_im(data, full_model, h, training, config, cache)
            null = marginal_likelihood_im(data, null_model, h, training, config, cache)
            value = full.log_value - null.log_value
            woe.setdefault("".join(map(str, outcome)), []).append(value)
            total += value
            variance += full.mc_se**2 + null.mc_se**2
        totals.append(total)
        errors.append(math.sqrt(variance))
        logger.info("logit twoe point", h=h, t_plus=t_plus, twoe=total)

    return TwoeCurve.from_values(
        grid, totals, family="logit", h=h, noisy=True, woe=woe, mc_se=errors
    )
