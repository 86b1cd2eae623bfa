# src/studies/evidence.py
"""증거 곡선과 증거 곡면 (정확한 나열)"""

import math
from typing import Any, Dict, List, Sequence

import numpy as np
from scipy import special

from src.core.errors import InputValidationError
from src.core.numeric import log_binom_pmf
from src.priors import (
    BernoulliNull,
    BinData,
    MomentPriorSpec,
    TwoPropData,
    TwoPropHyper,
    log_bf10_intrinsic_moment,
    log_bf10_intrinsic_moment2,
)


def evidence_curve(
    n: int, null: BernoulliNull, specs: Sequence[MomentPriorSpec]
) -> List[Dict[str, Any]]:
    """y = 0..n 각각에서 관측 빈도 ȳ 에 따른 P(M1 | y)"""
    if int(n) != n or n < 1:
        raise InputValidationError(f"n must be a positive integer, got {n!r}")
    rows = []
    for spec in specs:
        for y in range(n + 1):
            log_bf = log_bf10_intrinsic_moment(BinData(y, n), null, spec)
            rows.append({
                **spec.to_dict(),
                "theta0": null.theta0,
                "n": n,
                "y": y,
                "ybar": y / n,
                "log_bf10": log_bf,
                "prob_m1": float(special.expit(log_bf)),
                "log_prob_m1": float(-np.logaddexp(0.0, -log_bf)),
            })
    return rows


def expected_posterior_null_bernoulli(
    n: int, theta: float, null: BernoulliNull, spec: MomentPriorSpec
) -> float:
    """y ~ Bin(n, θ) 에 대한 P(M0 | y) 의 정확한 기댓값"""
    if int(n) != n or n < 0:
        raise InputValidationError(f"n must be a non-negative integer, got {n!r}")
    if not 0.0 <= theta <= 1.0:
        raise InputValidationError(f"theta must lie in [0, 1], got {theta!r}")
    total = 0.0
    for y in range(n + 1):
        weight = log_binom_pmf(y, n, theta)
        if weight == -math.inf:
            continue
        log_bf = log_bf10_intrinsic_moment(BinData(y, n), null, spec)
        total += float(special.expit(-log_bf)) * math.exp(weight)
    return total


def average_posterior_curve(
    n_grid: Sequence[int],
    theta: float,
    null: BernoulliNull,
    specs: Sequence[MomentPriorSpec],
) -> List[Dict[str, Any]]:
    """표본 크기에 따른 평균 P(M0 | y) 학습 곡선"""
    return [
        {
            **spec.to_dict(),
            "theta0": null.theta0,
            "theta": theta,
            "n": int(n),
            "mean_prob_m0": expected_posterior_null_bernoulli(int(n), theta, null, spec),
        }
        for spec in specs
        for n in n_grid
    ]


def evidence_surface(n: int, hyper: TwoPropHyper) -> List[Dict[str, Any]]:
    """n1 = n2 = n 일 때 (ȳ1, ȳ2) 격자 위의 P(M1 | y)"""
    if int(n) != n or n < 1:
        raise InputValidationError(f"n must be a positive integer, got {n!r}")
    rows = []
    for y1 in range(n + 1):
        for y2 in range(n + 1):
            log_bf = log_bf10_intrinsic_moment2(TwoPropData(y1, n, y2, n), hyper)
            rows.append({
                **hyper.to_dict(),
                "n": n,
                "y1": y1,
                "y2": y2,
                "ybar1": y1 / n,
                "ybar2": y2 / n,
                "log_bf10": log_bf,
                "prob_m1": float(special.expit(log_bf)),
            })
    return rows


def antidiagonal_profile(n: int, total: int, hyper: TwoPropHyper) -> List[float]:
    """y1 + y2 = total 을 따라가는 P(M1 | y) (y1 오름차순)"""
    if not 0 <= total <= 2 * n:
        raise InputValidationError(f"total must lie in 0..{2 * n}, got {total}")
    return [
        float(special.expit(log_bf10_intrinsic_moment2(TwoPropData(y1, n, total - y1, n), hyper)))
        for y1 in range(max(0, total - n), min(n, total) + 1)
    ]


def antidiagonal_minimum(n: int, total: int, hyper: TwoPropHyper) -> int:
    """반대각선 위에서 P(M1 | y) 가 가장 작은 y1"""
    profile = antidiagonal_profile(n, total, hyper)
    start = max(0, total - n)
    return start + min(range(len(profile)), key=profile.__getitem__)
