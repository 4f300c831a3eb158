"""Lambda sweeps, decay-exponent fits and the normalised monomial statistic."""

from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math

import numpy as np

from .decay import predict_monomial
from .errors import InputError
from .polynomial import Polynomial
from .quadrature import BumpSpec, DEFAULT_QUAD_TOL, bump_mass, oscillatory_integral

log = logging.getLogger(__name__)

# values below this fraction of the bump mass are treated as quadrature noise
NOISE_FLOOR = 1e-10


def default_grid(dimension):
    """``(lambda_min, lambda_max, n_points)`` used when nothing is specified."""
    return (1e2, 1e5, 24) if dimension <= 2 else (1e2, 1e4, 24)


def lambda_grid(lambda_min, lambda_max, n_points):
    if not (lambda_min >= 10 and lambda_max > lambda_min):
        raise InputError("need 10 <= lambda_min < lambda_max")
    if n_points < 8:
        raise InputError("a sweep needs at least 8 points")
    return np.geomspace(lambda_min, lambda_max, int(n_points))


@dataclass
class FitResult:
    exponent: float
    log_power: float
    fixed: str
    intercept: float
    residual_rms: float
    n_used: int

    def to_dict(self):
        return {"exponent": self.exponent, "log_power": self.log_power, "fixed": self.fixed,
                "intercept": self.intercept, "residual_rms": self.residual_rms,
                "points_used": self.n_used}


def fit_exponent(lams, values, log_power):
    """Least squares for ``log|I| = c - p log lam + m log log lam`` with ``m`` fixed."""
    x = np.log(lams)
    y = np.log(np.abs(values)) - log_power * np.log(x)
    A = np.column_stack([np.ones_like(x), -x])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    rms = float(np.sqrt(np.mean((A @ coef - y) ** 2)))
    return FitResult(float(coef[1]), float(log_power), "log_power", float(coef[0]), rms, len(x))


def fit_log_power(lams, values, exponent):
    """Same model with ``p`` fixed; returns the fitted ``m``."""
    x = np.log(lams)
    y = np.log(np.abs(values)) + exponent * x
    A = np.column_stack([np.ones_like(x), np.log(x)])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    rms = float(np.sqrt(np.mean((A @ coef - y) ** 2)))
    return FitResult(float(exponent), float(coef[1]), "exponent", float(coef[0]), rms, len(x))


@dataclass
class SweepResult:
    lambdas: np.ndarray
    values: np.ndarray
    nodes: list
    deltas: list
    converged: list
    exponent_fit: FitResult = None
    log_power_fit: FitResult = None
    fit_mask: np.ndarray = None
    extra_fits: dict = field(default_factory=dict)

    @property
    def fitted_exponent(self):
        return self.exponent_fit.exponent

    @property
    def fitted_log_power(self):
        return self.log_power_fit.log_power

    @property
    def residual_rms(self):
        return self.exponent_fit.residual_rms

    def csv_rows(self):
        yield ["lambda", "re", "im", "abs", "nodes_per_axis", "converged"]
        for lam, v, n, c in zip(self.lambdas, self.values, self.nodes, self.converged):
            yield [repr(float(lam)), repr(v.real), repr(v.imag), repr(abs(v)),
                   "x".join(str(k) for k in n), "true" if c else "false"]

    def to_dict(self):
        out = {
            "points": len(self.lambdas),
            "fitted_exponent": self.exponent_fit.to_dict() if self.exponent_fit else None,
            "fitted_log_power": self.log_power_fit.to_dict() if self.log_power_fit else None,
            "max_convergence_delta": max((d for d in self.deltas if d is not None), default=None),
        }
        for key, fit in self.extra_fits.items():
            out[key] = fit.to_dict()
        return out


def evaluate_grid(phase, beta, bump, lams, quad_tol=DEFAULT_QUAD_TOL):
    values, nodes, deltas = [], [], []
    for lam in lams:
        r = oscillatory_integral(phase, beta, bump, lam, quad_tol, full_output=True)
        values.append(r.value)
        nodes.append(r.nodes_per_axis)
        deltas.append(r.delta)
        log.info("lambda=%.6g |I|=%.6e nodes=%s", lam, abs(r.value), r.nodes_per_axis)
    return np.array(values), nodes, deltas


def fit_window(lams, values, mass):
    """Drop the first decade of the grid and anything under the noise floor."""
    keep = lams >= 10 * lams[0]
    noisy = np.abs(values) < NOISE_FLOOR * mass
    if np.any(noisy & keep):
        log.warning("%d sweep values below the noise floor were left out of the fit",
                    int(np.sum(noisy & keep)))
    keep = keep & ~noisy
    if np.sum(keep) < 3:
        raise InputError("too few usable sweep points left for a fit")
    return keep


def sweep_and_fit(phase, beta=None, bump=None, lambda_min=None, lambda_max=None, n_points=None,
                  predicted=None, quad_tol=DEFAULT_QUAD_TOL, fit_log_power_value=None, values=None):
    """Evaluate ``I`` on a geometric grid and fit the decay model twice.

    The exponent fit freezes the log power at ``fit_log_power_value`` when
    given, else at ``predicted.log_power``.  The log-power fit freezes the
    exponent at ``predicted.exponent``.  Precomputed ``values`` skip the
    quadrature.
    """
    n = phase.dimension
    bump = bump if bump is not None else BumpSpec.uniform(n)
    dmin, dmax, dn = default_grid(n)
    lams = lambda_grid(lambda_min or dmin, lambda_max or dmax, n_points or dn)
    if values is None:
        vals, nodes, deltas = evaluate_grid(phase, beta, bump, lams, quad_tol)
    else:
        vals, nodes, deltas = np.asarray(values), [()] * len(lams), [None] * len(lams)
    res = SweepResult(lams, vals, nodes, deltas, [True] * len(lams))
    if predicted is None:
        return res
    keep = fit_window(lams, vals, bump_mass(bump, beta))
    m = predicted.log_power if fit_log_power_value is None else fit_log_power_value
    res.fit_mask = keep
    res.exponent_fit = fit_exponent(lams[keep], vals[keep], m)
    res.log_power_fit = fit_log_power(lams[keep], vals[keep], float(predicted.exponent))
    if predicted.remark_log_power is not None and predicted.remark_log_power != m:
        res.extra_fits["fitted_exponent_remark"] = fit_exponent(
            lams[keep], vals[keep], predicted.remark_log_power)
    return res


@dataclass
class MonomialStatistic:
    lambdas: np.ndarray
    values: np.ndarray
    exponent: object
    log_power: int
    statistic: np.ndarray

    @property
    def sup(self):
        return float(np.max(self.statistic))

    @property
    def ratio(self):
        return float(np.max(self.statistic) / np.min(self.statistic))

    @property
    def spearman(self):
        from scipy.stats import spearmanr
        return float(spearmanr(np.log(self.lambdas), self.statistic)[0])


def normalised_statistic(lams, values, exponent, log_power):
    lams = np.asarray(lams, dtype=float)
    return np.abs(values) * lams ** float(exponent) / np.log(lams) ** log_power


def vdc_bound_statistic(alpha, beta=None, bump=None, lambda_min=None, lambda_max=None,
                        n_points=None, quad_tol=DEFAULT_QUAD_TOL, values=None):
    """``|I(lam)| lam^(1/d) / log(lam)^(M-1)`` for the monomial phase ``x^alpha``.

    The returned object's ``sup`` is the statistic's supremum over the grid;
    ``ratio`` and ``spearman`` measure spread and trend.
    """
    alpha = tuple(int(a) for a in alpha)
    pred = predict_monomial(alpha, beta)
    phase = Polynomial.monomial(alpha)
    n = len(alpha)
    dmin, dmax, dn = default_grid(n)
    lams = lambda_grid(lambda_min or dmin, lambda_max or dmax, n_points or dn)
    if values is None:
        values, _, _ = evaluate_grid(phase, beta, bump, lams, quad_tol)
    values = np.asarray(values)
    stat = normalised_statistic(lams, values, pred.exponent, pred.log_power)
    if not np.all(np.isfinite(stat)) or np.min(stat) <= 0:
        raise InputError("statistic is not positive and finite on the grid")
    return MonomialStatistic(lams, values, pred.exponent, pred.log_power, stat)


def phase_scaling_gap(phase, c, lam, beta=None, bump=None, quad_tol=DEFAULT_QUAD_TOL):
    """``| |I_{c f}(lam)| - |I_f(c lam)| |`` relative to the latter."""
    scaled = phase * Fraction(c)
    a = abs(oscillatory_integral(scaled, beta, bump, lam, quad_tol))
    b = abs(oscillatory_integral(phase, beta, bump, c * lam, quad_tol))
    return abs(a - b) / b if b else math.inf
