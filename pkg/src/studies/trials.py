# src/studies/trials.py
"""무작위 임상시험 표 모음에 대한 민감도 분석과 교차 검증"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import structlog
from scipy import special

from src.core.errors import InputValidationError
from src.priors import (
    TwoPropData,
    TwoPropHyper,
    default_hyper,
    log_bf10_intrinsic_moment2,
    posterior_mean_null,
    posterior_mean_theta1,
)
from src.priors.two_proportions import DEFAULT_B0

from .twoe import twoe_two_props

logger = structlog.get_logger(__name__)

DEFAULT_SENSITIVITY_ORDERS = (0, 1)
DEFAULT_CV_ORDERS = (0, 1, 2)


@lru_cache(maxsize=32)
def optimal_t_plus(h: int, b0: float = DEFAULT_B0) -> int:
    """최소 자료 TWOE 로 정한 t+*(h)"""
    return twoe_two_props(b0=b0, h=h).t_star


def default_t_range(h: int, b0: float = DEFAULT_B0) -> Tuple[int, int]:
    """t+*(h) 부터 t+*(h+1) 까지"""
    return optimal_t_plus(h, b0), optimal_t_plus(h + 1, b0)


def posterior_prob_null2(data: TwoPropData, hyper: TwoPropHyper) -> float:
    return float(special.expit(-log_bf10_intrinsic_moment2(data, hyper)))


@dataclass
class SensitivityRow:
    """표 하나, 차수 h 하나에 대한 P(M0 | y) 요약"""
    table_id: str
    h: int
    t_low: int
    t_high: int
    prob_m0_low: float
    prob_m0_high: float
    prob_m0_min: float
    prob_m0_max: float
    frequency_gap: float

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def sensitivity_analysis(
    tables: Sequence[TwoPropData],
    h_set: Sequence[int] = DEFAULT_SENSITIVITY_ORDERS,
    t_ranges: Optional[Mapping[int, Tuple[int, int]]] = None,
    ids: Optional[Sequence[str]] = None,
    b0: float = DEFAULT_B0,
) -> List[SensitivityRow]:
    """각 표와 h 에 대해 t+ 를 범위 안에서 훑으며 P(M0 | y) 를 계산

    결과는 |y1/n1 - y2/n2| 오름차순 (같으면 입력 순서).
    """
    if not tables:
        raise InputValidationError("sensitivity analysis needs at least one table")
    ids = list(ids) if ids is not None else [str(i + 1) for i in range(len(tables))]
    if len(ids) != len(tables):
        raise InputValidationError("ids and tables differ in length")

    ranges = {h: (t_ranges or {}).get(h) or default_t_range(h, b0) for h in h_set}
    for h, (low, high) in ranges.items():
        if low < 0 or high < low:
            raise InputValidationError(f"invalid t+ range for h={h}: ({low}, {high})")

    order = sorted(range(len(tables)), key=lambda i: tables[i].frequency_gap)
    rows = []
    for i in order:
        data = tables[i]
        for h in h_set:
            low, high = ranges[h]
            scan = [
                posterior_prob_null2(data, default_hyper(data.n1, data.n2, h, t, b0))
                for t in range(low, high + 1)
            ]
            rows.append(
                SensitivityRow(
                    table_id=ids[i],
                    h=h,
                    t_low=low,
                    t_high=high,
                    prob_m0_low=scan[0],
                    prob_m0_high=scan[-1],
                    prob_m0_min=min(scan),
                    prob_m0_max=max(scan),
                    frequency_gap=data.frequency_gap,
                )
            )
    logger.info("sensitivity analysis finished", tables=len(tables), orders=list(h_set))
    return rows


def model_averaged_mean(data: TwoPropData, hyper: TwoPropHyper) -> float:
    """M0, M1 사후평균의 베이즈 모형 평균 (θ1 에 대한 예측 확률)"""
    prob_m1 = float(special.expit(log_bf10_intrinsic_moment2(data, hyper)))
    return (1.0 - prob_m1) * posterior_mean_null(data, hyper.b0) + prob_m1 * posterior_mean_theta1(
        data, hyper
    )


def loo_forecasts(data: TwoPropData, hyper: TwoPropHyper) -> Dict[str, float]:
    """한 환자를 뺀 자료로 만든 발생 확률 예측 네 가지

    키: theta1_occ, theta1_non, theta2_occ, theta2_non (빈 블록은 빠짐).
    """
    forecasts: Dict[str, float] = {}
    for group, (table, hyp) in enumerate(((data, hyper), (data.swapped(), hyper.swapped())), 1):
        y, n = table.y1, table.n1
        if y >= 1:
            occ = TwoPropData(y - 1, n - 1, table.y2, table.n2)
            forecasts[f"theta{group}_occ"] = model_averaged_mean(occ, hyp)
        if n - y >= 1:
            non = TwoPropData(y, n - 1, table.y2, table.n2)
            forecasts[f"theta{group}_non"] = model_averaged_mean(non, hyp)
    return forecasts


def mean_log_score(data: TwoPropData, forecasts: Mapping[str, float]) -> float:
    """블록별 로그 점수의 관측 빈도 가중 평균"""
    blocks = (
        (data.y1, "theta1_occ", True),
        (data.n1 - data.y1, "theta1_non", False),
        (data.y2, "theta2_occ", True),
        (data.n2 - data.y2, "theta2_non", False),
    )
    total = 0.0
    for count, key, occurred in blocks:
        if count == 0:
            continue
        p = forecasts[key]
        total += count * (math.log(p) if occurred else math.log1p(-p))
    return total / data.n_plus


@dataclass
class CvScore:
    """차수 h 별 평균 로그 점수와 h = 0 대비 차이"""
    scores: Dict[int, float]
    table_id: str = ""
    forecasts: Dict[int, Dict[str, float]] = field(default_factory=dict, repr=False)

    @property
    def s0(self) -> float:
        return self.scores[0]

    @property
    def s1(self) -> float:
        return self.scores[1]

    @property
    def s2(self) -> float:
        return self.scores[2]

    @property
    def deltas(self) -> Dict[int, float]:
        return {h: s - self.scores[0] for h, s in self.scores.items() if h != 0}

    def to_dict(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {"table_id": self.table_id}
        row.update({f"s{h}": s for h, s in self.scores.items()})
        row.update({f"delta{h}": d for h, d in self.deltas.items()})
        return row


def cross_validation(
    table: TwoPropData,
    h_set: Sequence[int] = DEFAULT_CV_ORDERS,
    t_plus_rule: Optional[Mapping[int, int]] = None,
    b0: float = DEFAULT_B0,
    table_id: str = "",
) -> CvScore:
    """한 표에 대한 leave-one-out 로그 점수 S_h

    초모수는 전체 표의 (n1, n2) 와 t+ = t+*(h) 로 정하고 모든 예측에 공유합니다.
    """
    if table.n_plus < 1:
        raise InputValidationError("cross validation needs at least one patient")
    if 0 not in h_set:
        raise InputValidationError("cross validation scores are reported relative to h = 0")

    scores: Dict[int, float] = {}
    forecasts: Dict[int, Dict[str, float]] = {}
    for h in h_set:
        t_plus = (t_plus_rule or {}).get(h)
        if t_plus is None:
            t_plus = optimal_t_plus(h, b0)
        hyper = default_hyper(table.n1, table.n2, h, t_plus, b0)
        forecasts[h] = loo_forecasts(table, hyper)
        scores[h] = mean_log_score(table, forecasts[h])
    return CvScore(scores=scores, table_id=table_id, forecasts=forecasts)


def cross_validation_study(
    tables: Sequence[TwoPropData],
    ids: Optional[Sequence[str]] = None,
    h_set: Sequence[int] = DEFAULT_CV_ORDERS,
    b0: float = DEFAULT_B0,
) -> Tuple[List[CvScore], Dict[int, float]]:
    """표 모음 전체의 교차 검증과 h 별 차이의 중앙값 (백분율)"""
    if not tables:
        raise InputValidationError("cross validation study needs at least one table")
    ids = list(ids) if ids is not None else [str(i + 1) for i in range(len(tables))]
    order = sorted(range(len(tables)), key=lambda i: tables[i].frequency_gap)
    results = [cross_validation(tables[i], h_set, b0=b0, table_id=ids[i]) for i in order]
    medians = {
        h: float(np.median([r.deltas[h] for r in results])) * 100.0
        for h in h_set
        if h != 0
    }
    logger.info("cross validation finished", tables=len(tables), median_percent=medians)
    return results, medians
