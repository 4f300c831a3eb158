"""Brute-force evaluation of ``I(lam) = int exp(i lam f) |x^beta| phi dx``.

The box ``prod [-r_j, r_j]`` is covered by tensor Gauss-Legendre rules.
Three reductions keep the node counts affordable at large ``lam``:

* the phase splits into groups of variables that never share a monomial,
  and the integral factors into one lower-dimensional integral per group;
* an axis on which every exponent is even is folded onto ``[0, r]``;
* every other axis is split at 0, so the nodes cluster at the origin, where
  the monomial phases are flattest and ``|x|^beta`` has its kink.

Each half-axis carries a composite rule made of equal panels of at most
``PANEL`` nodes.  Node counts start from a resolution estimate for the
local frequency and are doubled until two successive values agree.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import math

import numba
import numpy as np
from scipy.special import roots_legendre

from .errors import ConvergenceError, InputError

N0 = 64
PANEL = 1024
# per-axis node caps, indexed by the dimension of the integral being refined
NODE_CAP = {1: 2 ** 20, 2: 2 ** 15}
NODE_CAP_HIGH = 512
DEFAULT_RADIUS = 0.5
DEFAULT_QUAD_TOL = 1e-6
# nodes per unit of frequency, plus a fixed margin, needed before a value is trusted
RESOLUTION = 0.6
MARGIN = 32


@dataclass(frozen=True)
class BumpSpec:
    """``prod_j exp(1 - 1/(1 - (x_j/r_j)^2))`` on the open box, 0 outside."""

    radius: tuple

    def __post_init__(self):
        r = tuple(float(x) for x in self.radius)
        if not r or any(not (x > 0) or math.isinf(x) for x in r):
            raise InputError("bump radii must be positive and finite")
        object.__setattr__(self, "radius", r)

    @classmethod
    def uniform(cls, dimension, radius=DEFAULT_RADIUS):
        return cls((radius,) * dimension)

    @property
    def dimension(self):
        return len(self.radius)

    def to_dict(self):
        return {"radius": list(self.radius)}


def _bump_1d(x, r):
    t = np.asarray(x, dtype=float) / r
    inside = np.abs(t) < 1
    s = np.where(inside, t * t, 0.0)
    return np.where(inside, np.exp(1.0 - 1.0 / (1.0 - s)), 0.0)


def bump_value(spec, point):
    point = tuple(float(x) for x in point)
    if len(point) != spec.dimension:
        raise InputError("point has %d coordinates, bump has %d" % (len(point), spec.dimension))
    return float(np.prod([_bump_1d(x, r) for x, r in zip(point, spec.radius)]))


@lru_cache(maxsize=None)
def gauss_legendre(n):
    x, w = roots_legendre(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def composite_rule(a, b, n):
    """``n`` nodes on ``[a, b]``: equal panels of at most ``PANEL`` GL nodes."""
    per = min(n, PANEL)
    panels = n // per
    x, w = gauss_legendre(per)
    edges = np.linspace(a, b, panels + 1)
    half = (b - a) / (2 * panels)
    mids = (edges[:-1] + edges[1:]) / 2
    nodes = (mids[:, None] + half * x[None, :]).ravel()
    weights = np.tile(w * half, panels)
    return nodes, weights


@numba.njit(parallel=True, fastmath=True, cache=True)
def _tensor_sum(P, w1, Q, W):
    T, N1 = P.shape
    M = Q.shape[1]
    re = np.zeros(N1)
    im = np.zeros(N1)
    for i in numba.prange(N1):
        sr = 0.0
        si = 0.0
        for m in range(M):
            ph = 0.0
            for t in range(T):
                ph += P[t, i] * Q[t, m]
            sr += W[m] * math.cos(ph)
            si += W[m] * math.sin(ph)
        re[i] = w1[i] * sr
        im[i] = w1[i] * si
    # fixed-order reduction keeps the result independent of the thread count
    return re.sum(), im.sum()


@dataclass
class QuadratureResult:
    value: complex
    nodes_per_axis: tuple
    delta: float
    converged: bool
    levels: list = field(default_factory=list)


@dataclass(frozen=True)
class _Axis:
    index: int
    folded: bool
    radius: float
    beta: int
    slope: float  # bound for |d_j f| on the box

    def pieces(self):
        r = self.radius
        return [(0.0, r)] if self.folded else [(-r, 0.0), (0.0, r)]

    def base_nodes(self, lam):
        """Smallest ``N0 * 2^k`` resolving the oscillation on one half-axis."""
        omega = abs(lam) * self.slope * self.radius / 2
        need = RESOLUTION * omega + MARGIN
        n = N0
        while n < need:
            n *= 2
        return n

    def rule(self, n):
        xs, ws = [], []
        for a, b in self.pieces():
            x, w = composite_rule(a, b, n)
            xs.append(x)
            ws.append(w)
        x = np.concatenate(xs)
        w = np.concatenate(ws) * _bump_1d(x, self.radius)
        if self.beta:
            w = w * np.abs(x) ** self.beta
        if self.folded:
            w = 2 * w
        return x, w


def variable_groups(exps, n):
    """Connected components of the "appear in a common monomial" relation."""
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for row in exps:
        used = [j for j in range(n) if row[j]]
        for j in used[1:]:
            parent[find(j)] = find(used[0])
    groups = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(j)
    return sorted(groups.values())


def _slopes(exps, coefs, radius):
    r = np.asarray(radius)
    mono = np.abs(coefs) * np.prod(r[None, :] ** exps, axis=1)
    return [float(np.sum(mono * exps[:, j]) / r[j]) for j in range(len(r))]


def _group_integral(exps, coefs, axes, lam, ns):
    rules = [ax.rule(n) for ax, n in zip(axes, ns)]
    T = len(coefs)
    x1, w1 = rules[0]
    if T:
        P = lam * coefs[:, None] * x1[None, :] ** exps[:, 0][:, None]
    else:
        P = np.zeros((1, len(x1)))
    if len(rules) == 1:
        Q = np.ones((P.shape[0], 1))
        W = np.ones(1)
    else:
        grids = np.meshgrid(*[r[0] for r in rules[1:]], indexing="ij")
        pts = np.stack([g.ravel() for g in grids])
        W = np.ones(pts.shape[1])
        wgrids = np.meshgrid(*[r[1] for r in rules[1:]], indexing="ij")
        for g in wgrids:
            W = W * g.ravel()
        if T:
            Q = np.prod(pts[None, :, :] ** exps[:, 1:, None], axis=1)
        else:
            Q = np.zeros((1, pts.shape[1]))
    re, im = _tensor_sum(np.ascontiguousarray(P), np.ascontiguousarray(w1),
                         np.ascontiguousarray(Q), np.ascontiguousarray(W))
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ConvergenceError("non-finite quadrature value", nodes=list(ns))
    return complex(re, im)


def _cap(dim):
    return NODE_CAP.get(dim, NODE_CAP_HIGH)


def _refine(exps, coefs, axes, lam, tol, floor):
    base = [ax.base_nodes(lam) for ax in axes]
    cap = _cap(len(axes))
    npieces = [len(ax.pieces()) for ax in axes]
    prev = None
    levels = []
    s = 0
    while True:
        ns = [b * 2 ** s for b in base]
        if any(n * k > cap for n, k in zip(ns, npieces)):
            last = levels[-1][1] if levels else None
            raise ConvergenceError(
                "quadrature did not converge below the node cap (lambda=%g)" % lam,
                last_delta=last, nodes=[n * k for n, k in zip(ns, npieces)])
        val = _group_integral(exps, coefs, axes, lam, ns)
        delta = None if prev is None else abs(val - prev) / max(abs(val), floor)
        levels.append(([n * k for n, k in zip(ns, npieces)], delta))
        if delta is not None and delta < tol:
            return val, levels
        prev = val
        s += 1


def bump_mass(bump, beta=None):
    """``int |x^beta| phi dx`` by one-dimensional quadrature per axis."""
    beta = tuple(beta) if beta is not None else (0,) * bump.dimension
    total = 1.0
    for r, b in zip(bump.radius, beta):
        ax = _Axis(0, True, r, int(b), 0.0)
        x, w = ax.rule(2 * PANEL)
        total *= float(np.sum(w))
    return total


def oscillatory_integral(phase, beta=None, bump=None, lam=1.0, quad_tol=DEFAULT_QUAD_TOL,
                         full_output=False):
    """``int exp(i lam f(x)) prod |x_j|^beta_j phi(x) dx`` over the bump's box."""
    n = phase.dimension
    beta = tuple(int(b) for b in beta) if beta is not None else (0,) * n
    if len(beta) != n or any(b < 0 for b in beta):
        raise InputError("beta must be a nonnegative vector of length %d" % n)
    bump = bump if bump is not None else BumpSpec.uniform(n)
    if bump.dimension != n:
        raise InputError("bump dimension %d does not match the phase" % bump.dimension)
    if not quad_tol > 0:
        raise InputError("quad_tol must be positive")
    lam = float(lam)
    if not math.isfinite(lam):
        raise InputError("lambda must be finite")
    exps, coefs = phase.to_float_arrays()
    exps = exps.astype(np.int64).reshape(-1, n)
    coefs = np.asarray(coefs, dtype=float)
    if len(coefs) and phase.constant_term != 0:
        # a constant only contributes a unimodular factor
        const = float(phase.constant_term)
        keep = exps.sum(axis=1) > 0
        exps, coefs = exps[keep], coefs[keep]
    else:
        const = 0.0
    slopes = _slopes(exps, coefs, bump.radius) if len(coefs) else [0.0] * n
    groups = variable_groups(exps, n)
    floor = 1e-13 * bump_mass(bump, beta)
    value = complex(np.exp(1j * lam * const))
    nodes = [0] * n
    delta = 0.0
    levels = []
    for g in groups:
        rows = np.array([any(e[j] for j in g) for e in exps], dtype=bool) if len(exps) else np.zeros(0, bool)
        sub_e = exps[rows][:, g] if len(exps) else np.zeros((0, len(g)), np.int64)
        sub_c = coefs[rows] if len(coefs) else np.zeros(0)
        axes = [_Axis(j, bool(np.all(sub_e[:, k] % 2 == 0)), bump.radius[j], beta[j], slopes[j])
                for k, j in enumerate(g)]
        sub_floor = floor ** (len(g) / n)
        val, lv = _refine(sub_e, sub_c, axes, lam, quad_tol / len(groups), sub_floor)
        value *= val
        for j, cnt in zip(g, lv[-1][0]):
            nodes[j] = cnt
        delta = max(delta, lv[-1][1])
        levels.append(lv)
    if not full_output:
        return value
    return QuadratureResult(value, tuple(nodes), delta, True, levels)
