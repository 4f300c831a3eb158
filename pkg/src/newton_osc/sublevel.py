"""Exact measure of ``{x in [0,1]^n : x^alpha < u}``.

With ``x_j`` uniform, ``T_j = -log x_j`` are standard exponentials and the
set is ``{sum alpha_j T_j > log(1/u)}``.  The sum has Laplace transform
``prod_j mu_j / (s + mu_j)`` with ``mu_j = 1/alpha_j``; its partial fraction
expansion (exact rationals) integrates to a tail of the form

    sum_a u^(1/a) * sum_q C_{a,q} * log(1/u)^q.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
import math

import numpy as np

from .errors import InputError


def _clean_alpha(alpha):
    alpha = [int(a) for a in alpha]
    if any(a < 0 for a in alpha):
        raise InputError("alpha must be nonnegative")
    alpha = [a for a in alpha if a]
    if not alpha:
        raise InputError("alpha must have a positive entry")
    return alpha


def _series_inverse_power(delta, m, order):
    """Taylor coefficients in ``h`` of ``(delta + h)^(-m)`` up to ``h^order``."""
    return [Fraction((-1) ** k * comb(m + k - 1, k)) / delta ** (m + k) for k in range(order + 1)]


def _mul_series(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b[:order + 1 - i]):
            out[i + j] += x * y
    return out


def partial_fractions(alpha):
    """``{mu: [K_1, .., K_m]}`` with ``prod mu/(s+mu) = sum K_r / (s+mu)^r``."""
    mult = {}
    for a in _clean_alpha(alpha):
        mu = Fraction(1, a)
        mult[mu] = mult.get(mu, 0) + 1
    out = {}
    for mu, m in mult.items():
        # G(s) = (s+mu)^m F(s), expanded at s = -mu + h
        series = [Fraction(mu) ** m] + [Fraction(0)] * (m - 1)
        for nu, k in mult.items():
            if nu == mu:
                continue
            factor = [c * nu ** k for c in _series_inverse_power(nu - mu, k, m - 1)]
            series = _mul_series(series, factor, m - 1)
        out[mu] = [series[m - r] for r in range(1, m + 1)]
    return out


def tail_coefficients(alpha):
    """``{mu: [C_0, C_1, ..]}`` with ``P(sum > L) = sum_mu e^(-mu L) sum_q C_q L^q``."""
    out = {}
    for mu, K in partial_fractions(alpha).items():
        C = [Fraction(0)] * len(K)
        for r, k in enumerate(K, start=1):
            for q in range(r):
                C[q] += k / (factorial(q) * mu ** (r - q))
        out[mu] = C
    return out


@dataclass(frozen=True)
class SublevelValue:
    u: float
    value: float
    expression: str


def _format_expression(coeffs):
    terms = []
    for mu in sorted(coeffs, reverse=True):
        for q, c in enumerate(coeffs[mu]):
            if c == 0:
                continue
            part = "(%s)*u^(%s)" % (c, mu) if mu != 1 else "(%s)*u" % c
            if q == 1:
                part += "*log(1/u)"
            elif q > 1:
                part += "*log(1/u)^%d" % q
            terms.append(part)
    return " + ".join(terms) if terms else "0"


def sublevel_expression(alpha):
    return _format_expression(tail_coefficients(alpha))


def sublevel_measure(alpha, u):
    """Measure of ``{x in [0,1]^n : x^alpha < u}`` with its closed form."""
    u_exact = Fraction(u) if not isinstance(u, float) else u
    if u_exact <= 0:
        raise InputError("u must be positive")
    coeffs = tail_coefficients(alpha)
    expr = _format_expression(coeffs)
    if u_exact >= 1:
        return SublevelValue(float(u), 1.0, expr)
    uf = float(u_exact)
    L = -math.log(uf)
    total = 0.0
    for mu, C in coeffs.items():
        poly = sum(float(c) * L ** q for q, c in enumerate(C))
        total += uf ** float(mu) * poly
    return SublevelValue(uf, min(max(total, 0.0), 1.0), expr)


@dataclass(frozen=True)
class MonteCarloEstimate:
    value: float
    stderr: float
    samples: int
    seed: int


def monte_carlo_measure(alpha, u, samples=10 ** 7, seed=0, chunk=10 ** 6):
    """Sampling estimate of the same measure, with its standard error."""
    alpha = np.array(_clean_alpha(alpha), dtype=float)
    rng = np.random.default_rng(seed)
    logu = math.log(float(u))
    hits = 0
    left = samples
    while left > 0:
        m = min(chunk, left)
        x = rng.random((m, len(alpha)))
        # 1 - U is uniform on (0, 1], which keeps the log finite
        s = np.log1p(-x) @ alpha
        hits += int(np.count_nonzero(s < logu))
        left -= m
    p = hits / samples
    return MonteCarloEstimate(p, math.sqrt(p * (1 - p) / samples), samples, seed)
