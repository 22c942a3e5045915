"""Test statistic, normal calibration, and closed-form theory quantities.

The statistic compares the squared triangle density with the 6-cycle
density,

    T = sqrt(C(n,3)) * (c3_hat^2 - c6_hat) / (2 * c3_hat^(3/2)),

which is asymptotically standard normal when no dense block is planted
and drifts to +infinity when one is.  The two-sided rule rejects at
level alpha when |T| > z_{alpha/2}.

Theory side: for community indicators Z_i ~ Bernoulli(r) and edge law
W_i W_j ((a-b) Z_i Z_j + b)/n, the expected edge-indicator product
around a triangle is A_n * W_i^2 W_j^2 W_k^2 and around a 6-cycle is
B_n * prod W^2, with A_n, B_n the exact polynomials in (a-b, b, r)
implemented below (derived by expanding the product over cycle edges
and classifying edge subsets by how many vertices they cover).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.special import ndtri

from .census import CycleCensus, census
from .errors import InputError, SizeError
from .graph import Graph
from .models import ModelParams, WeightVector


# ---------------------------------------------------------------------------
# normal distribution helpers


def normal_cdf(x: float) -> float:
    """Standard normal CDF via erfc; absolute error well below 1e-10."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF on (0, 1)."""
    if not (0.0 < p < 1.0):
        raise InputError(f"quantile defined on (0, 1), got {p}")
    return float(ndtri(p))


def normal_upper_quantile(alpha: float) -> float:
    """z with P(N(0,1) > z) = alpha; evaluated as -ndtri(alpha) so small
    upper-tail levels keep full precision."""
    if not (0.0 < alpha < 1.0):
        raise InputError(f"upper-tail level must be in (0, 1), got {alpha}")
    return float(-ndtri(alpha))


# ---------------------------------------------------------------------------
# elementary symmetric polynomials


def elementary_symmetric(values, k: int) -> float:
    """e_k(values) by the standard one-pass dynamic program, O(n*k).

    All additions are of nonnegative terms for nonnegative input, so no
    cancellation occurs.  e_0 = 1 by the empty-product convention.
    """
    vals = np.asarray(values, dtype=np.float64).reshape(-1)
    if k < 0 or k > len(vals):
        raise InputError(f"need 0 <= k <= {len(vals)}, got k={k}")
    e = np.zeros(k + 1)
    e[0] = 1.0
    for i, v in enumerate(vals):
        top = min(i + 1, k)
        for j in range(top, 0, -1):
            e[j] += v * e[j - 1]
    return float(e[k])


# ---------------------------------------------------------------------------
# exact moments of the planted model


def coefficient_an(params: ModelParams) -> float:
    """Expected triangle edge-product coefficient:
    [(a-b)^3 r^3 + 3 (a-b)^2 b r^3 + 3 (a-b) b^2 r^2 + b^3] / n^3."""
    d = params.a - params.b
    b = params.b
    r = params.r
    num = d ** 3 * r ** 3 + 3 * d ** 2 * b * r ** 3 + 3 * d * b ** 2 * r ** 2 + b ** 3
    return num / params.n ** 3


def coefficient_bn(params: ModelParams) -> float:
    """Expected 6-cycle edge-product coefficient, a degree-6 polynomial
    in r whose coefficients classify edge subsets of the 6-ring by the
    number of vertices they cover."""
    d = params.a - params.b
    b = params.b
    r = params.r
    num = (
        r ** 6 * (d ** 6 + 6 * d ** 5 * b + 9 * d ** 4 * b ** 2 + 2 * d ** 3 * b ** 3)
        + r ** 5 * (6 * d ** 4 * b ** 2 + 12 * d ** 3 * b ** 3)
        + r ** 4 * (6 * d ** 3 * b ** 3 + 9 * d ** 2 * b ** 4)
        + r ** 3 * 6 * d ** 2 * b ** 4
        + r ** 2 * 6 * d * b ** 5
        + b ** 6
    )
    return num / params.n ** 6


def expected_densities(params: ModelParams, w: WeightVector) -> tuple[float, float]:
    """Exact expectations (E c3_hat, E c6_hat) for the planted model.

    E c3_hat = A_n * e_3(W^2) / C(n,3); E c6_hat = B_n * e_6(W^2) / C(n,6),
    where e_k is the elementary symmetric polynomial of the squared
    weights.
    """
    n = params.n
    if n < 6:
        raise SizeError(f"expected_densities needs n >= 6, got {n}")
    if len(w) != n:
        raise InputError(f"weight vector length {len(w)} != n={n}")
    wsq = w.values ** 2
    c3 = coefficient_an(params) * elementary_symmetric(wsq, 3) / comb(n, 3)
    c6 = coefficient_bn(params) * elementary_symmetric(wsq, 6) / comb(n, 6)
    return c3, c6


def lambda1_leading(params: ModelParams, w: WeightVector) -> float:
    """Leading term of the signal C3^2 - C6 under a planted block:
    2 (a-b)^3 b^3 r^3 (1-r)^3 / n^6 * ||W||_2^12 / (3!^2 C(n,3)^2).
    The O(1/n) remainder is not included."""
    d = params.a - params.b
    b = params.b
    r = params.r
    n = params.n
    norm12 = w.norm2sq ** 6
    return (2 * d ** 3 * b ** 3 * r ** 3 * (1 - r) ** 3 / n ** 6
            * norm12 / (36 * comb(n, 3) ** 2))


def lambda1_exact(params: ModelParams, w: WeightVector) -> float:
    """Exact signal C3^2 - C6 built from the exact expected densities."""
    c3, c6 = expected_densities(params, w)
    return c3 * c3 - c6


def lambda_sq(params: ModelParams, w: WeightVector) -> float:
    """Asymptotic power driver
    (a-b)^6 b^6 r^6 (1-r)^6 ||W||_2^6 / (n^12 p0^9), with p0 = a/n.
    Returns 0 when a = b (no signal)."""
    if params.a == params.b:
        return 0.0
    d = params.a - params.b
    b = params.b
    r = params.r
    n = params.n
    p0 = params.p0
    return (d ** 6 * b ** 6 * r ** 6 * (1 - r) ** 6 * w.norm2sq ** 3
            / (float(n) ** 12 * p0 ** 9))


def power_index(params: ModelParams, w: WeightVector) -> float:
    """Detectability index r^2 (a-b) ||W||_2^2 / n; the test's power
    tends to one along sequences where this diverges (for a comparable
    to b)."""
    return params.r ** 2 * (params.a - params.b) * w.norm2sq / params.n


def lambda_exact(params: ModelParams, w: WeightVector) -> float:
    """Population value of the statistic: sqrt(C(n,3)) (C3^2 - C6) /
    (2 C3^(3/2)); a finite-n drift predictor for T."""
    c3, c6 = expected_densities(params, w)
    if c3 <= 0:
        return 0.0
    return math.sqrt(comb(params.n, 3)) * (c3 * c3 - c6) / (2 * c3 ** 1.5)


@dataclass(frozen=True)
class TheoreticalQuantities:
    """Closed-form quantities for one (params, weights) setting."""

    a_n: float
    b_n: float
    c3: float
    c6: float
    lambda1_leading: float
    lambda_sq: float
    power_index: float

    def to_dict(self) -> dict:
        return {
            "a_n": self.a_n,
            "b_n": self.b_n,
            "c3": self.c3,
            "c6": self.c6,
            "lambda1_leading": self.lambda1_leading,
            "lambda_sq": self.lambda_sq,
            "power_index": self.power_index,
        }


def theoretical_quantities(params: ModelParams, w: WeightVector) -> TheoreticalQuantities:
    c3, c6 = expected_densities(params, w)
    return TheoreticalQuantities(
        a_n=coefficient_an(params),
        b_n=coefficient_bn(params),
        c3=c3,
        c6=c6,
        lambda1_leading=lambda1_leading(params, w),
        lambda_sq=lambda_sq(params, w),
        power_index=power_index(params, w),
    )


# ---------------------------------------------------------------------------
# the test itself


@dataclass(frozen=True)
class TestReport:
    """Outcome of the cycle-count test on one graph.

    When the graph has no triangles (or fewer than six vertices) the
    statistic is undefined; the report is flagged degenerate, t_n and
    p_value are None, and reject is False.
    """

    t_n: float | None
    p_value: float | None
    reject: bool
    alpha: float
    census: CycleCensus
    degenerate: bool

    def to_dict(self) -> dict:
        d = {
            "t_n": self.t_n,
            "p_value": self.p_value,
            "reject": self.reject,
            "alpha": self.alpha,
            "degenerate": self.degenerate,
        }
        d.update(self.census.to_dict())
        d["degenerate"] = self.degenerate  # report flag wins over census flag
        return d


def t_from_census(c: CycleCensus, alpha: float = 0.05) -> TestReport:
    """Build the test report from an existing census.

    The numerator c3_hat^2 - c6_hat is a small difference of small
    numbers under the null, so it is formed from the exact integer
    counts over a common denominator before any rounding.
    """
    if not (0.0 < alpha < 1.0):
        raise InputError(f"alpha must be in (0, 1), got {alpha}")
    if c.degenerate or c.n3 == 0:
        return TestReport(t_n=None, p_value=None, reject=False, alpha=alpha,
                          census=c, degenerate=True)
    n = c.n
    c3n = comb(n, 3)
    d6 = 60 * comb(n, 6)
    # exact integer numerator of (n3/C(n,3))^2 - n6/(60 C(n,6))
    num = c.n3 * c.n3 * d6 - c.n6 * c3n * c3n
    den = c3n * c3n * d6
    diff = num / den  # correctly rounded float from exact integers
    c3_hat = c.n3 / c3n
    t = math.sqrt(c3n) * diff / (2.0 * c3_hat ** 1.5)
    p = math.erfc(abs(t) / math.sqrt(2.0))  # = 2*(1 - Phi(|t|))
    reject = abs(t) > normal_upper_quantile(alpha / 2.0)
    return TestReport(t_n=t, p_value=p, reject=reject, alpha=alpha,
                      census=c, degenerate=False)


def t_statistic(g: Graph, alpha: float = 0.05) -> TestReport:
    """Census the graph and evaluate the cycle-count test at level alpha."""
    return t_from_census(census(g), alpha=alpha)


# ---------------------------------------------------------------------------
# regularity diagnostics


@dataclass(frozen=True)
class RegularityReport:
    """Raw quantities behind the null-normality conditions plus the
    names of any violated conditions at the configured thresholds.

    The asymptotic conditions are 1 << n p0 << sqrt(n),
    1 << p0 ||W||_2^2, and ||W||_k^k <= c1 ||W||_2^2 <= c2 n for
    k = 3..12; "1 <<" is proxied by a finite threshold t_low.
    """

    n_p0: float
    sqrt_n: float
    p0_norm2sq: float
    norm_ratios: dict[int, float]
    norm2sq_over_n: float
    flags: list[str]

    def to_dict(self) -> dict:
        return {
            "n_p0": self.n_p0,
            "sqrt_n": self.sqrt_n,
            "p0_norm2sq": self.p0_norm2sq,
            "norm_ratios": {str(k): v for k, v in self.norm_ratios.items()},
            "norm2sq_over_n": self.norm2sq_over_n,
            "flags": list(self.flags),
        }


def check_regularity(n: int, p0: float, w: WeightVector, *,
                     t_low: float = 5.0, c1: float = 1.0,
                     c2: float = 1.0) -> RegularityReport:
    """Evaluate the null-normality regularity quantities and flag
    violations; thresholds are configurable because the theory leaves
    the constants unspecified."""
    if len(w) != n:
        raise InputError(f"weight vector length {len(w)} != n={n}")
    n_p0 = n * p0
    sqrt_n = math.sqrt(n)
    norm2sq = w.norm2sq
    p0_norm2sq = p0 * norm2sq
    ratios = {k: (w.normk(k) / norm2sq if norm2sq > 0 else math.inf)
              for k in range(3, 13)}
    flags = []
    if n_p0 <= t_low:
        flags.append(f"1 << np0 violated (np0 = {n_p0:.4g} <= {t_low:g})")
    if n_p0 >= sqrt_n:
        flags.append(f"np0 << sqrt(n) violated (np0 = {n_p0:.4g} >= {sqrt_n:.4g})")
    if p0_norm2sq <= t_low:
        flags.append(
            f"1 << p0*||W||_2^2 violated (p0*||W||_2^2 = {p0_norm2sq:.4g} <= {t_low:g})")
    for k, ratio in ratios.items():
        if w.normk(k) > c1 * norm2sq:
            flags.append(
                f"||W||_{k}^{k} <= c1*||W||_2^2 violated (ratio = {ratio:.4g} > {c1:g})")
    if norm2sq > c2 * n:
        flags.append(
            f"||W||_2^2 <= c2*n violated (||W||_2^2/n = {norm2sq / n:.4g} > {c2:g})")
    return RegularityReport(n_p0=n_p0, sqrt_n=sqrt_n, p0_norm2sq=p0_norm2sq,
                            norm_ratios=ratios, norm2sq_over_n=norm2sq / n,
                            flags=flags)
