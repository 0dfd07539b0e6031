"""Statistical battery: one-sided pooled t test, one-sided Mann-Whitney U,
and simple linear regression with standardized-residual outlier flagging.

All routines are pure functions of their samples.  One-sided p convention:
a small p supports the stated alternative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateDesignError, DegenerateSampleError, UsageError

EXACT_U_LIMIT = 16  # full enumeration up to C(16, n1) labelings


class Alternative(enum.Enum):
    """Direction of the alternative hypothesis about sample a versus b."""

    A_GREATER = "greater"
    A_LESS = "less"


def _as_alternative(alt) -> Alternative:
    if isinstance(alt, Alternative):
        return alt
    return Alternative(alt)


# --- Student t machinery --------------------------------------------------

def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the regularized incomplete beta (Lentz)."""
    MAXIT, EPS, FPMIN = 300, 1e-15, 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def reg_inc_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    front = math.exp(
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_cdf(t: float, df: int) -> float:
    """Lower-tail CDF of Student's t; absolute error well under 1e-9."""
    if df < 1:
        raise UsageError(f"df must be >= 1, got {df}")
    if t == 0.0:
        return 0.5
    x = df / (df + t * t)
    tail = 0.5 * reg_inc_beta(df / 2.0, 0.5, x)
    return 1.0 - tail if t > 0 else tail


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: int
    p_one_sided: float


def _mean(xs):
    return sum(xs) / len(xs)


def t_test_one_sided(a, b, alternative=Alternative.A_GREATER) -> TTestResult:
    """Pooled-variance two-sample Student t test, one-sided."""
    alt = _as_alternative(alternative)
    a, b = [float(x) for x in a], [float(x) for x in b]
    if len(a) < 2 or len(b) < 2:
        raise UsageError("each sample needs at least 2 observations")
    n1, n2 = len(a), len(b)
    ma, mb = _mean(a), _mean(b)
    ss = sum((x - ma) ** 2 for x in a) + sum((x - mb) ** 2 for x in b)
    df = n1 + n2 - 2
    pooled_var = ss / df
    if pooled_var == 0.0:
        raise DegenerateSampleError("pooled variance is zero")
    se = math.sqrt(pooled_var * (1.0 / n1 + 1.0 / n2))
    t = (ma - mb) / se
    if alt is Alternative.A_GREATER:
        p = 1.0 - student_t_cdf(t, df)
    else:
        p = student_t_cdf(t, df)
    return TTestResult(t, df, p)


# --- Mann-Whitney U -------------------------------------------------------

class UMethod(enum.Enum):
    EXACT = "exact"
    NORMAL_APPROX = "normal_approx"


@dataclass(frozen=True)
class UTestResult:
    u: float  # U statistic of sample a
    p_one_sided: float
    method: UMethod


def _midranks(values):
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j + 2) / 2.0  # ranks are 1-based
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def _u_count_distribution(n1: int, n2: int):
    """count[u] = number of labelings of n1 'a'-ranks among n1+n2 giving
    U statistic u (no ties).  Classic partition recurrence."""
    # f(m, n, u) = f(m-1, n, u-n) + f(m, n-1, u)
    table = {}

    def f(m, n, u):
        if u < 0:
            return 0
        if m == 0 or n == 0:
            return 1 if u == 0 else 0
        key = (m, n, u)
        if key not in table:
            table[key] = f(m - 1, n, u - n) + f(m, n - 1, u)
        return table[key]

    total = [f(n1, n2, u) for u in range(n1 * n2 + 1)]
    return total


def mann_whitney_one_sided(a, b, alternative=Alternative.A_GREATER) -> UTestResult:
    """One-sided Mann-Whitney U.  Exact enumeration when n1+n2 <= 16 with
    no ties; otherwise normal approximation with continuity and tie
    correction."""
    alt = _as_alternative(alternative)
    a, b = [float(x) for x in a], [float(x) for x in b]
    if not a or not b:
        raise UsageError("both samples must be non-empty")
    n1, n2 = len(a), len(b)
    ranks = _midranks(a + b)
    r1 = sum(ranks[:n1])
    u1 = r1 - n1 * (n1 + 1) / 2.0  # U statistic of a
    u2 = n1 * n2 - u1

    has_ties = len(set(a + b)) < n1 + n2
    if not has_ties and n1 + n2 <= EXACT_U_LIMIT:
        counts = _u_count_distribution(n1, n2)
        total = math.comb(n1 + n2, n1)
        # small U of the sample the alternative claims is *smaller*
        u_small = int(round(u2 if alt is Alternative.A_GREATER else u1))
        p = sum(counts[: u_small + 1]) / total
        return UTestResult(u1, p, UMethod.EXACT)

    n = n1 + n2
    mu = n1 * n2 / 2.0
    tie_sum = 0.0
    seen = {}
    for v in a + b:
        seen[v] = seen.get(v, 0) + 1
    for count in seen.values():
        tie_sum += count**3 - count
    var = n1 * n2 / 12.0 * ((n + 1) - tie_sum / (n * (n - 1)))
    if var <= 0.0:
        return UTestResult(u1, 0.5, UMethod.NORMAL_APPROX)
    # alternative "a greater" is supported by large u1
    z = (u1 - mu - 0.5) if alt is Alternative.A_GREATER else (mu - u1 - 0.5)
    z /= math.sqrt(var)
    p = 0.5 * math.erfc(z / math.sqrt(2.0))
    return UTestResult(u1, p, UMethod.NORMAL_APPROX)


# --- Linear regression ----------------------------------------------------

@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float
    r2: float
    std_residuals: tuple[float, ...]
    outlier_indices: tuple[int, ...]

    def line_equation(self) -> str:
        return f"y = {self.slope:.4f}x + {self.intercept:.4f}"


OUTLIER_CUTOFF = 2.0  # |standardized residual| > 2, no epsilon slack


def linear_regression(x, y) -> RegressionResult:
    """Least squares y on x with R^2, leverage-aware standardized
    residuals, and |r| > 2 outlier flagging."""
    x, y = [float(v) for v in x], [float(v) for v in y]
    if len(x) != len(y):
        raise UsageError("x and y must have equal length")
    n = len(x)
    if n < 3:
        raise UsageError("regression needs at least 3 points")
    xbar, ybar = _mean(x), _mean(y)
    sxx = sum((v - xbar) ** 2 for v in x)
    if sxx == 0.0:
        raise DegenerateDesignError("x is constant")
    sxy = sum((xv - xbar) * (yv - ybar) for xv, yv in zip(x, y))
    slope = sxy / sxx
    intercept = ybar - slope * xbar

    residuals = [yv - (intercept + slope * xv) for xv, yv in zip(x, y)]
    sse = sum(r * r for r in residuals)
    sst = sum((yv - ybar) ** 2 for yv in y)
    r2 = 0.0 if sst == 0.0 else 1.0 - sse / sst

    s2 = sse / (n - 2)
    std_residuals = []
    for xv, r in zip(x, residuals):
        h = 1.0 / n + (xv - xbar) ** 2 / sxx
        denom = math.sqrt(s2 * (1.0 - h)) if s2 > 0.0 and h < 1.0 else 0.0
        std_residuals.append(r / denom if denom > 0.0 else 0.0)
    outliers = tuple(i for i, sr in enumerate(std_residuals) if abs(sr) > OUTLIER_CUTOFF)
    return RegressionResult(slope, intercept, r2, tuple(std_residuals), outliers)
