"""Hand-rolled reference arithmetic used as independent oracles.

Everything here works on plain coefficient lists and stays deliberately
separate from the package's PowerSeries / CohClass code paths, so that
agreement between the two is a real cross-check.
"""

from __future__ import annotations

import math
from fractions import Fraction


def series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        for j, bj in enumerate(b[: order + 1 - i]):
            out[i + j] += ai * bj
    return out


def series_div(num: list[Fraction], den: list[Fraction], order: int) -> list[Fraction]:
    """Long division of truncated series; den[0] must be nonzero."""
    num = list(num[: order + 1]) + [Fraction(0)] * (order + 1 - len(num))
    den = list(den[: order + 1]) + [Fraction(0)] * (order + 1 - len(den))
    out = [Fraction(0)] * (order + 1)
    for k in range(order + 1):
        acc = num[k]
        for j in range(1, k + 1):
            acc -= den[j] * out[k - j]
        out[k] = acc / den[0]
    return out


def series_compose(outer: list[Fraction], inner: list[Fraction], order: int) -> list[Fraction]:
    """outer(inner(x)) truncated; inner[0] must be zero."""
    assert not inner or inner[0] == 0
    out = [Fraction(0)] * (order + 1)
    power = [Fraction(1)] + [Fraction(0)] * order
    for k, c in enumerate(outer[: order + 1]):
        for i, p in enumerate(power):
            out[i] += c * p
        power = series_mul(power, inner, order)
    return out


def a_hat_series_oracle(order: int) -> list[Fraction]:
    """(x/2)/sinh(x/2) by brute-force division of the sinh expansion."""
    den = [Fraction(0)] * (order + 1)
    for k in range(0, order // 2 + 1):
        den[2 * k] = Fraction(1, 4**k * math.factorial(2 * k + 1))
    return series_div([Fraction(1)], den, order)


def todd_series_oracle(order: int) -> list[Fraction]:
    """x/(1 - e^(-x)) by brute-force division of the exponential expansion."""
    den = [Fraction((-1) ** k, math.factorial(k + 1)) for k in range(order + 1)]
    return series_div([Fraction(1)], den, order)


def bernoulli_oracle(n: int) -> Fraction:
    """B_n extracted from the series x/(e^x - 1), convention B_1 = -1/2."""
    den = [Fraction(1, math.factorial(k + 1)) for k in range(n + 1)]
    series = series_div([Fraction(1)], den, n)
    return series[n] * math.factorial(n)


# -- truncated one-generator polynomial ring Q[x]/(x^(n+1)) ------------------
# enough to model CP^n integration independently of the package


def cpn_mul(a: list[Fraction], b: list[Fraction], n: int) -> list[Fraction]:
    """Product in Q[x]/(x^(n+1)): coefficient lists of length n+1."""
    return series_mul(a, b, n)


def cpn_integral(a: list[Fraction], n: int) -> Fraction:
    """Coefficient of x^n, the fundamental class pairing for CP^n."""
    return a[n] if len(a) > n else Fraction(0)


def evaluate_series_at_x(series: list[Fraction], n: int) -> list[Fraction]:
    """Evaluate a one-variable series at the degree-2 generator of CP^n."""
    out = [Fraction(0)] * (n + 1)
    for k, c in enumerate(series[: n + 1]):
        out[k] += c
    return out
