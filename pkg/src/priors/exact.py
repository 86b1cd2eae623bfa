# src/priors/exact.py
"""정확 유리수 계산 (테스트 기준값)

모든 값은 fractions.Fraction 으로 계산합니다. Beta 함수는
B(a, b) = (a-1)!(b-1)!/(a+b-1)! 를 그대로 사용하므로 a, b 는 양의 정수여야 합니다.
K 상수는 Beta 함수의 비 B(a+j, b)/B(a, b) 만 쓰므로 양의 유리수 초모수도 받습니다.
"""

from fractions import Fraction
from math import comb, factorial
from typing import Union

from src.core.errors import InputValidationError

Rational = Union[int, Fraction]


def _as_positive_int(name: str, value: Rational) -> int:
    value = Fraction(value)
    if value.denominator != 1 or value <= 0:
        raise InputValidationError(f"{name} must be a positive integer for exact arithmetic")
    return int(value)


def _as_positive(name: str, value: Rational) -> Fraction:
    value = Fraction(value)
    if value <= 0:
        raise InputValidationError(f"{name} must be positive for exact arithmetic")
    return value


def _as_probability(theta: Rational) -> Fraction:
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise InputValidationError("theta must lie strictly inside (0, 1)")
    return theta


def exact_beta(a: Rational, b: Rational) -> Fraction:
    a = _as_positive_int("a", a)
    b = _as_positive_int("b", b)
    return Fraction(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))


def exact_beta_density(theta: Rational, a: Rational, b: Rational) -> Fraction:
    theta = _as_probability(theta)
    a = _as_positive_int("a", a)
    b = _as_positive_int("b", b)
    return theta ** (a - 1) * (1 - theta) ** (b - 1) / exact_beta(a, b)


def exact_rising_ratio(a: Rational, b: Rational, j: int) -> Fraction:
    """B(a+j, b)/B(a, b) = Π_{i<j} (a+i)/(a+b+i)"""
    a = _as_positive("a", a)
    b = _as_positive("b", b)
    ratio = Fraction(1)
    for i in range(j):
        ratio *= (a + i) / (a + b + i)
    return ratio


def exact_binom_pmf(x: int, n: int, theta: Rational) -> Fraction:
    theta = Fraction(theta)
    return comb(n, x) * theta**x * (1 - theta) ** (n - x)


def exact_k_const(a1: Rational, a2: Rational, h: int, theta0: Rational) -> Fraction:
    """Σ_j C(2h,j)(-1)^j θ0^(2h-j) B(a1+j, a2)/B(a1, a2)"""
    theta0 = _as_probability(theta0)
    return sum(
        (
            comb(2 * h, j) * (-1) ** j * theta0 ** (2 * h - j) * exact_rising_ratio(a1, a2, j)
            for j in range(2 * h + 1)
        ),
        Fraction(0),
    )


def exact_bf10_moment(
    y: int, n: int, a1: Rational, a2: Rational, h: int, theta0: Rational
) -> Fraction:
    theta0 = _as_probability(theta0)
    if n == 0:
        return Fraction(1)
    moment_ratio = exact_k_const(a1 + y, a2 + n - y, h, theta0) / exact_k_const(a1, a2, h, theta0)
    conjugate = exact_beta(a1 + y, a2 + n - y) / (
        exact_beta(a1, a2) * theta0**y * (1 - theta0) ** (n - y)
    )
    return moment_ratio * conjugate


def exact_bf10_intrinsic_moment(
    y: int, n: int, b: Rational, h: int, t: int, theta0: Rational
) -> Fraction:
    return sum(
        (
            exact_bf10_moment(y, n, b + x, b + t - x, h, theta0) * exact_binom_pmf(x, t, theta0)
            for x in range(t + 1)
        ),
        Fraction(0),
    )


def exact_intrinsic_moment_prior_density(
    theta: Rational, b: Rational, h: int, t: int, theta0: Rational
) -> Fraction:
    theta = _as_probability(theta)
    theta0 = _as_probability(theta0)
    return sum(
        (
            (theta - theta0) ** (2 * h)
            * exact_beta_density(theta, b + x, b + t - x)
            / exact_k_const(b + x, b + t - x, h, theta0)
            * exact_binom_pmf(x, t, theta0)
            for x in range(t + 1)
        ),
        Fraction(0),
    )


# 두 비율 문제

def exact_k_const2(a11: Rational, a12: Rational, a21: Rational, a22: Rational, h: int) -> Fraction:
    return sum(
        (
            comb(2 * h, j)
            * (-1) ** j
            * exact_rising_ratio(a11, a12, j)
            * exact_rising_ratio(a21, a22, 2 * h - j)
            for j in range(2 * h + 1)
        ),
        Fraction(0),
    )


def exact_m0_training(x1: int, x2: int, t1: int, t2: int, b0: Rational) -> Fraction:
    return (
        comb(t1, x1)
        * comb(t2, x2)
        * exact_beta(b0 + x1 + x2, b0 + t1 + t2 - x1 - x2)
        / exact_beta(b0, b0)
    )


def exact_bf10_moment2(
    y1: int,
    n1: int,
    y2: int,
    n2: int,
    a: tuple[Rational, Rational, Rational, Rational],
    h: int,
    b0: Rational,
) -> Fraction:
    a11, a12, a21, a22 = a
    post = (a11 + y1, a12 + n1 - y1, a21 + y2, a22 + n2 - y2)
    conjugate = (
        exact_beta(b0, b0)
        * exact_beta(post[0], post[1])
        * exact_beta(post[2], post[3])
        / (
            exact_beta(a11, a12)
            * exact_beta(a21, a22)
            * exact_beta(b0 + y1 + y2, b0 + n1 + n2 - y1 - y2)
        )
    )
    return exact_k_const2(*post, h) / exact_k_const2(a11, a12, a21, a22, h) * conjugate


def exact_bf10_intrinsic_moment2(
    y1: int,
    n1: int,
    y2: int,
    n2: int,
    b0: Rational,
    b1: Rational,
    b2: Rational,
    h: int,
    t1: int,
    t2: int,
) -> Fraction:
    total = Fraction(0)
    for x1 in range(t1 + 1):
        for x2 in range(t2 + 1):
            a = (b1 + x1, b1 + t1 - x1, b2 + x2, b2 + t2 - x2)
            total += exact_bf10_moment2(y1, n1, y2, n2, a, h, b0) * exact_m0_training(
                x1, x2, t1, t2, b0
            )
    return total


def exact_posterior_mean_theta1(
    y1: int,
    n1: int,
    y2: int,
    n2: int,
    b0: Rational,
    b1: Rational,
    b2: Rational,
    h: int,
    t1: int,
    t2: int,
) -> Fraction:
    """M1 아래 θ1 의 사후평균 (훈련표본 혼합 포함)"""
    numerator = Fraction(0)
    denominator = Fraction(0)
    for x1 in range(t1 + 1):
        for x2 in range(t2 + 1):
            a = (b1 + x1, b1 + t1 - x1, b2 + x2, b2 + t2 - x2)
            weight = exact_bf10_moment2(y1, n1, y2, n2, a, h, b0) * exact_m0_training(
                x1, x2, t1, t2, b0
            )
            post = (a[0] + y1, a[1] + n1 - y1, a[2] + y2, a[3] + n2 - y2)
            mean = (
                Fraction(post[0], 1)
                / (post[0] + post[1])
                * exact_k_const2(post[0] + 1, post[1], post[2], post[3], h)
                / exact_k_const2(*post, h)
            )
            numerator += weight * mean
            denominator += weight
    return numerator / denominator
