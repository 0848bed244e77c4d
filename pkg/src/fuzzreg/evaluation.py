"""Observed-vs-predicted interval comparison and two small hypothesis tests.

Intervals are compared through their midpoints ("weights").  The tests are a
two-group one-way ANOVA and a paired t-test, with tail probabilities from a
regularized incomplete beta function evaluated by continued fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .fuzzy_random import Interval

STUDENT_T = "student-t"
F_DIST = "F"

_CF_EPS = 1e-15
_CF_TINY = 1e-300
_CF_MAX_ITER = 10_000


class EvaluationError(ValueError):
    pass


def midpoint_weight(iv: Interval) -> float:
    return 0.5 * (iv.lower + iv.upper)


@dataclass(frozen=True)
class IntervalComparison:
    label: str
    observed: Interval
    predicted: Interval
    observed_weight: float
    predicted_weight: float
    abs_diff: float
    pct_error: float
    covered: bool


@dataclass(frozen=True)
class MetricsReport:
    coverage_rate: float
    mse_weight: float
    mape_weight: float


def compare_all(observed: Sequence[Interval], predicted: Sequence[Interval],
                labels: Sequence[str] | None = None,
                tol: float = 1e-9) -> tuple[list[IntervalComparison], MetricsReport]:
    """Row-by-row comparison plus coverage, MSE and MAPE of the midpoint weights.

    ``pct_error`` and ``mape_weight`` are fractions (0.0797 means 7.97%).
    """
    if len(observed) != len(predicted):
        raise EvaluationError(f"{len(observed)} observed intervals but {len(predicted)} predicted")
    if not observed:
        raise EvaluationError("nothing to compare")
    if labels is None:
        labels = [str(i + 1) for i in range(len(observed))]
    rows = []
    for lab, obs, pred in zip(labels, observed, predicted):
        wo, wp = midpoint_weight(obs), midpoint_weight(pred)
        if wo == 0:
            raise EvaluationError(f"row {lab}: observed weight is zero, percentage error undefined")
        diff = abs(wp - wo)
        rows.append(IntervalComparison(lab, obs, pred, wo, wp, diff, diff / abs(wo),
                                       pred.contains(obs, tol)))
    n = len(rows)
    report = MetricsReport(
        coverage_rate=sum(r.covered for r in rows) / n,
        mse_weight=math.fsum(r.abs_diff ** 2 for r in rows) / n,
        mape_weight=math.fsum(r.pct_error for r in rows) / n,
    )
    return rows, report


# -- special functions -------------------------------------------------------

def _beta_cf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete-beta continued fraction
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = _CF_TINY if abs(d) < _CF_TINY else d
        c = 1.0 + aa / c
        c = _CF_TINY if abs(c) < _CF_TINY else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = _CF_TINY if abs(d) < _CF_TINY else d
        c = 1.0 + aa / c
        c = _CF_TINY if abs(c) < _CF_TINY else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def regularized_beta(a: float, b: float, x: float) -> float:
    """``I_x(a, b)`` for ``a, b > 0`` and ``0 <= x <= 1``."""
    if a <= 0 or b <= 0:
        raise ValueError("beta parameters must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(log_front)
    # the fraction converges fast on the side of the mean
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def tail_probability(distribution: str, statistic: float, df) -> float:
    """Two-sided tail for Student t, upper tail for F.

    ``df`` is a number for ``student-t`` and a ``(numerator, denominator)``
    pair for ``F``.
    """
    if distribution == STUDENT_T:
        nu = float(df)
        if not nu > 0:
            raise ValueError(f"degrees of freedom must be positive, got {df}")
        if math.isinf(statistic):
            return 0.0
        t2 = statistic * statistic
        return min(1.0, regularized_beta(0.5 * nu, 0.5, nu / (nu + t2)))
    if distribution == F_DIST:
        d1, d2 = (float(v) for v in df)
        if not (d1 > 0 and d2 > 0):
            raise ValueError(f"degrees of freedom must be positive, got {df}")
        if statistic <= 0:
            return 1.0
        if math.isinf(statistic):
            return 0.0
        return regularized_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * statistic))
    raise ValueError(f"unknown distribution {distribution!r}")


# -- tests --------------------------------------------------------------------

@dataclass(frozen=True)
class AnovaResult:
    F: float
    p: float
    df: tuple[int, int]
    degenerate: bool = False


@dataclass(frozen=True)
class PairedTResult:
    t: float
    p: float
    df: int


@dataclass(frozen=True)
class TestReport:
    anova_F: float
    anova_p: float
    anova_df: tuple[int, int]
    t_stat: float
    t_p: float
    t_df: int
    anova_degenerate: bool = False


def _mean(xs):
    return math.fsum(xs) / len(xs)


def one_way_anova(group_a: Sequence[float], group_b: Sequence[float]) -> AnovaResult:
    """Two-group one-way ANOVA.

    With zero within-group variance and unequal means the statistic is
    infinite; ``p = 0`` is returned with ``degenerate=True``.
    """
    if len(group_a) < 2 or len(group_b) < 2:
        raise EvaluationError("each ANOVA group needs at least two values")
    groups = [list(map(float, group_a)), list(map(float, group_b))]
    n = sum(len(g) for g in groups)
    grand = _mean(groups[0] + groups[1])
    ssb = math.fsum(len(g) * (_mean(g) - grand) ** 2 for g in groups)
    ssw = math.fsum((x - _mean(g)) ** 2 for g in groups for x in g)
    df = (1, n - 2)
    msb, msw = ssb / df[0], ssw / df[1]
    if msw == 0:
        if msb == 0:
            return AnovaResult(0.0, 1.0, df, degenerate=True)
        return AnovaResult(math.inf, 0.0, df, degenerate=True)
    f = msb / msw
    return AnovaResult(f, tail_probability(F_DIST, f, df), df)


def paired_t(a: Sequence[float], b: Sequence[float]) -> PairedTResult:
    """Paired t-test on ``a - b``, two-sided."""
    if len(a) != len(b):
        raise EvaluationError("paired samples must have equal length")
    if len(a) < 2:
        raise EvaluationError("paired t-test needs at least two pairs")
    d = [float(x) - float(y) for x, y in zip(a, b)]
    n = len(d)
    m = _mean(d)
    var = math.fsum((x - m) ** 2 for x in d) / (n - 1)
    if var == 0:
        raise EvaluationError("paired differences have zero variance; t is undefined")
    t = m / math.sqrt(var / n)
    return PairedTResult(t, tail_probability(STUDENT_T, t, n - 1), n - 1)


def run_tests(observed_weights: Sequence[float], predicted_weights: Sequence[float]) -> TestReport:
    an = one_way_anova(observed_weights, predicted_weights)
    pt = paired_t(predicted_weights, observed_weights)
    return TestReport(an.F, an.p, an.df, pt.t, pt.p, pt.df, an.degenerate)
