"""Nondegeneracy of the gamma-parts on compact faces.

A face is nondegenerate when the gradient of its gamma-part has no zero
with all coordinates nonzero.  Monomial faces are trivially fine.  In two
variables the question is decided exactly: the gamma-part is
quasi-homogeneous, so every zero can be moved to a slice ``x2 = +-1`` where
it becomes a common real root of two univariate polynomials.  In three or
more variables a seeded multistart minimisation gives a labelled numeric
verdict.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import logging
import numpy as np

from .errors import InputError
from .newton import gamma_part, newton_polyhedron
from .polynomial import Polynomial, evaluate, partial_derivative
from . import univariate as uv

log = logging.getLogger(__name__)

NONDEGENERATE = "nondegenerate"
DEGENERATE = "degenerate"
NUMERIC = "nondegenerate_numeric"
INCONCLUSIVE = "inconclusive"

ZERO_TOL = 1e-12
INCONCLUSIVE_TOL = 1e-6
WITNESS_TOL = 1e-10
LOG_BOX = 12.0


@dataclass(frozen=True)
class FaceVerdict:
    face: object
    verdict: str
    witness: tuple = None
    exact: bool = True
    residual: float = 0.0
    gamma_part: Polynomial = None

    @property
    def ok(self):
        return self.verdict in (NONDEGENERATE, NUMERIC)


@dataclass
class NondegeneracyReport:
    entries: list = field(default_factory=list)

    @property
    def nondegenerate(self):
        return all(e.ok for e in self.entries)

    @property
    def overall(self):
        verdicts = {e.verdict for e in self.entries}
        for v in (DEGENERATE, INCONCLUSIVE, NUMERIC):
            if v in verdicts:
                return v
        return NONDEGENERATE

    def first_failure(self):
        for v in (DEGENERATE, INCONCLUSIVE):
            for e in self.entries:
                if e.verdict == v:
                    return e
        return None


def quasi_homogeneous_weight(p, face):
    """Positive weight ``w`` and degree ``L`` with ``f_gamma(t^w x) = t^L f_gamma(x)``.

    The weight is the sum of the normals of the face's tight facets; the
    identity is checked term by term, which is the exact polynomial identity.
    """
    poly = newton_polyhedron(p)
    facets = [poly.facets[i] for i in face.tight_facets]
    w = tuple(sum(f.normal[j] for f in facets) for j in range(p.dimension))
    fg = gamma_part(p, face)
    degrees = {sum(a * b for a, b in zip(w, alpha)) for alpha in fg.support}
    if len(degrees) != 1 or any(x <= 0 for x in w):
        raise AssertionError("gamma-part is not quasi-homogeneous for weight %r" % (w,))
    return w, degrees.pop()


def _univariate_slice(q, s):
    """``q(x1, s)`` as a univariate coefficient list in ``x1``."""
    coeffs = {}
    for (a1, a2), c in q.terms.items():
        coeffs[a1] = coeffs.get(a1, 0) + c * Fraction(s) ** a2
    top = max(coeffs, default=0)
    return uv.trim([coeffs.get(k, 0) for k in range(top + 1)])


def _check_planar(fg):
    d1 = partial_derivative(fg, 1)
    d2 = partial_derivative(fg, 2)
    for sign1 in (1, -1):
        for s in (1, -1):
            g = uv.gcd(_univariate_slice(d1, s), _univariate_slice(d2, s))
            if uv.degree(g) < 1:
                continue
            _, g = uv.strip_zero_roots(g)
            if uv.degree(g) < 1:
                continue
            if sign1 < 0:
                g = [c * (-1) ** k for k, c in enumerate(g)]
            found = uv.positive_root(g)
            if found is None:
                continue
            root, exact = found
            w = (sign1 * root, Fraction(s))
            res = max(abs(float(evaluate(d, w))) for d in (d1, d2))
            return DEGENERATE, w, exact, res
    return NONDEGENERATE, None, True, 0.0


def _scaled_residuals(exps, coefs, x):
    """Relative cancellation in each ``x_j d_j f(x)``.

    Component ``j`` is ``sum_a a_j c_a x^a / sum_a |a_j c_a x^a|``: it lies in
    [-1, 1], is invariant under the quasi-homogeneous scaling, and vanishes
    exactly where ``d_j f`` does (off the coordinate hyperplanes).
    """
    mono = coefs * np.prod(x[None, :] ** exps, axis=1)
    num = exps.T @ mono
    den = exps.T @ np.abs(mono)
    return np.divide(num, den, out=np.zeros_like(num), where=den > 0)


def _check_numeric(fg, weight, seed, starts, box=LOG_BOX):
    """Smallest scaled gradient found over all sign orthants.

    Log-coordinates are confined to a box; minima pinned to the box edge are
    zeros "at infinity", which belong to smaller faces (checked separately),
    so they are discarded.
    """
    from scipy.optimize import least_squares

    n = fg.dimension
    exps, coefs = fg.to_float_arrays()
    expf = exps.astype(float)
    w = np.asarray(weight, dtype=float)
    # orthonormal basis of the hyperplane sum w_j u_j = 0
    q, _ = np.linalg.qr(np.column_stack([w] + [np.eye(n)[:, j] for j in range(n)]))
    basis = q[:, 1:n]
    rng = np.random.default_rng(seed)
    best = (np.inf, None)
    for orth in range(2 ** n):
        signs = np.array([1.0 if (orth >> j) & 1 == 0 else -1.0 for j in range(n)])
        z0 = np.clip(rng.normal(scale=2.0, size=(starts, n - 1)), -box + 1, box - 1)

        def resid(z):
            return _scaled_residuals(expf, coefs, signs * np.exp(basis @ z))

        vals = np.array([np.sum(resid(z) ** 2) for z in z0])
        order = np.argsort(vals)
        if vals[order[0]] < best[0]:
            best = (float(vals[order[0]]), signs * np.exp(basis @ z0[order[0]]))
        for idx in order[:3]:
            sol = least_squares(resid, z0[idx], bounds=(-box, box), method="trf",
                                xtol=1e-15, ftol=1e-15, gtol=1e-15)
            if np.any(np.abs(sol.x) > box - 0.5):
                continue
            val = float(np.sum(sol.fun ** 2))
            if val < best[0]:
                best = (val, signs * np.exp(basis @ sol.x))
    return best


def _rational_witness(fg, x):
    grads = fg.gradient()
    for den in (1, 2, 3, 4, 6, 8, 10, 12, 100, 1000):
        cand = tuple(Fraction(v).limit_denominator(den) for v in x)
        if any(c == 0 for c in cand):
            continue
        if all(evaluate(g, cand) == 0 for g in grads):
            return cand
    return None


def check_face(p, face, seed=0, starts=200):
    """Verdict for one compact face of ``p``'s Newton polyhedron."""
    if not face.compact:
        raise InputError("nondegeneracy is only tested on compact faces")
    fg = gamma_part(p, face)
    if fg.is_zero():
        raise InputError("empty gamma-part")
    if len(fg) == 1:
        return FaceVerdict(face, NONDEGENERATE, gamma_part=fg)
    weight, _ = quasi_homogeneous_weight(p, face)
    if p.dimension <= 2:
        verdict, w, exact, res = _check_planar(fg)
        return FaceVerdict(face, verdict, w, exact, res, fg)
    value, x = _check_numeric(fg, weight, seed, starts)
    if value >= INCONCLUSIVE_TOL:
        return FaceVerdict(face, NUMERIC, None, False, value, fg)
    if value >= ZERO_TOL:
        return FaceVerdict(face, INCONCLUSIVE, tuple(float(v) for v in x), False, value, fg)
    exact = _rational_witness(fg, x)
    if exact is not None:
        return FaceVerdict(face, DEGENERATE, exact, True, 0.0, fg)
    x = _refine_witness(fg, x)
    res = max(abs(float(evaluate(g, tuple(x)))) for g in fg.gradient())
    if res < WITNESS_TOL:
        return FaceVerdict(face, DEGENERATE, tuple(float(v) for v in x), False, res, fg)
    log.warning("numeric zero of the scaled gradient could not be refined (residual %.3g)", res)
    return FaceVerdict(face, INCONCLUSIVE, tuple(float(v) for v in x), False, res, fg)


def _refine_witness(fg, x):
    from scipy.optimize import least_squares

    exps, coefs = fg.to_float_arrays()
    expf = exps.astype(float)

    def grad(v):
        mono = coefs * np.prod(v[None, :] ** expf, axis=1)
        return (expf.T @ mono) / v

    sol = least_squares(grad, np.asarray(x, dtype=float), method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return sol.x


def check_all(p, seed=0, starts=200):
    """Check every compact face; ``report.nondegenerate`` is the overall flag."""
    poly = newton_polyhedron(p)
    report = NondegeneracyReport()
    for face in poly.compact_faces():
        report.entries.append(check_face(p, face, seed=seed, starts=starts))
    return report
