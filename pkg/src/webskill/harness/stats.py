"""Welch's unequal-variance t-test, self-contained.

The two-sided p-value comes from the Student t survival function,
evaluated through the regularized incomplete beta function (continued
fraction, relative tolerance well past the 4 decimals reports need).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

SIGNIFICANCE_T = 2.0
SIGNIFICANCE_P = 0.05


class DegenerateSample(ValueError):
    """Both samples have zero variance; the statistic is undefined."""


@dataclass(frozen=True)
class TTestResult:
    t_stat: float
    degrees_of_freedom: float
    p_value: float
    n_a: int
    n_b: int
    mean_a: float
    mean_b: float

    @property
    def significant(self) -> bool:
        """The reporting convention: |t| > 2 and p < 0.05."""
        return abs(self.t_stat) > SIGNIFICANCE_T and self.p_value < SIGNIFICANCE_P


def welch_t_test(xs: Sequence[float], ys: Sequence[float]) -> TTestResult:
    """Welch's t statistic, Welch-Satterthwaite df, two-sided p-value."""
    n_a, n_b = len(xs), len(ys)
    if n_a < 2 or n_b < 2:
        raise ValueError("each sample needs at least two observations")
    mean_a = math.fsum(xs) / n_a
    mean_b = math.fsum(ys) / n_b
    var_a = math.fsum((x - mean_a) ** 2 for x in xs) / (n_a - 1)
    var_b = math.fsum((y - mean_b) ** 2 for y in ys) / (n_b - 1)
    sa, sb = var_a / n_a, var_b / n_b
    se2 = sa + sb
    if se2 == 0.0:
        raise DegenerateSample("both samples have zero variance")
    t = (mean_a - mean_b) / math.sqrt(se2)
    df = se2 ** 2 / (sa ** 2 / (n_a - 1) + sb ** 2 / (n_b - 1))
    p = student_t_two_sided(t, df)
    return TTestResult(t, df, p, n_a, n_b, mean_a, mean_b)


def student_t_two_sided(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if df <= 0:
        raise ValueError(f"degrees of freedom must be positive, got {df}")
    if math.isinf(t):
        return 0.0
    if t == 0.0:
        return 1.0
    x = df / (df + t * t)
    return regularized_incomplete_beta(df / 2.0, 0.5, x)


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) by Lentz's continued fraction."""
    if a <= 0 or b <= 0:
        raise ValueError("shape parameters must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    # The fraction converges fast only below the distribution's bulk;
    # above it, evaluate the mirror image.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_fraction(a, b, x) / a
    return 1.0 - front * _beta_fraction(b, a, 1.0 - x) / b


def _beta_fraction(a: float, b: float, x: float, eps: float = 1e-15,
                   max_iter: int = 500) -> float:
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        num = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + num * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + num / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        num = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + num * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + num / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise ArithmeticError("incomplete beta fraction did not converge")
