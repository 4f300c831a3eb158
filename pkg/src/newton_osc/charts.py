"""Monomial charts attached to the maximal cones of a smooth fan.

For a cone with generators ``a^1 .. a^n`` the chart is
``x_j = prod_i y_i^(a^i_j)``; the exponent matrix has the generators as
columns, so row ``j`` is the exponent vector of ``x_j``.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .exact import det, dot
from .fan import Cone, cone_index, normal_fan, smooth_refinement
from .newton import newton_polyhedron
from .polynomial import Polynomial, format_polynomial


class PullbackError(ArithmeticError):
    """The monomial factorisation failed; indicates a fan/polyhedron bug."""


@dataclass(frozen=True)
class Chart:
    cone: Cone
    exponent_matrix: tuple
    ell: tuple
    jacobian_exponents: tuple
    residual: Polynomial
    chart_d: Fraction
    chart_M: int

    @property
    def generators(self):
        return self.cone.generators

    def ratios(self):
        return [Fraction(l, j + 1) for l, j in zip(self.ell, self.jacobian_exponents)]

    def to_dict(self):
        return {
            "generators": [list(g) for g in self.generators],
            "exponent_matrix": [list(r) for r in self.exponent_matrix],
            "ell": list(self.ell),
            "jacobian_exponents": list(self.jacobian_exponents),
            "residual": format_polynomial(self.residual, "y"),
            "d_chart": str(self.chart_d),
            "M": self.chart_M,
        }


def _as_cone(cone):
    return cone if isinstance(cone, Cone) else Cone(tuple(cone))


def ell_values(cone, np_):
    """``l(a^i) = min_v <a^i, v>`` over the polyhedron's vertices."""
    cone = _as_cone(cone)
    if not np_.vertices:
        raise InputError("polyhedron has no vertices")
    return tuple(min(dot(g, v) for v in np_.vertices) for g in cone.generators)


def jacobian_exponents(cone):
    """Exponents ``|a^i| - 1`` of the chart Jacobian ``prod |y_i|^(|a^i|-1)``."""
    cone = _as_cone(cone)
    if cone_index(cone) != 1:
        raise InputError("Jacobian exponents are defined for smooth cones only")
    return tuple(sum(g) - 1 for g in cone.generators)


def decay_ratio(ell, jac):
    """``max_i ell_i / (jac_i + 1)`` and how many indices attain it."""
    ratios = [Fraction(l, j + 1) for l, j in zip(ell, jac)]
    d = max(ratios)
    return d, sum(1 for r in ratios if r == d)


def chart_decay(chart):
    return decay_ratio(chart.ell, chart.jacobian_exponents)


def monomial_map(cone, dimension=None):
    """The chart map as polynomials ``x_j(y)``."""
    cone = _as_cone(cone)
    n = len(cone.generators)
    return [Polynomial.monomial(tuple(g[j] for g in cone.generators)) for j in range(n)]


def pullback(p, cone, np_=None):
    """Chart data with the exact factorisation ``f(pi(y)) = y^ell * residual``."""
    cone = _as_cone(cone)
    if np_ is None:
        np_ = newton_polyhedron(p)
    A = tuple(tuple(r) for r in cone.matrix())
    if abs(det([list(r) for r in A])) != 1:
        raise InputError("pullback needs a unimodular cone")
    ell = ell_values(cone, np_)
    jac = jacobian_exponents(cone)
    pulled = p.substitute_monomials(A)
    res_terms = {}
    for beta, c in pulled.terms.items():
        shifted = tuple(b - l for b, l in zip(beta, ell))
        if any(s < 0 for s in shifted):
            raise PullbackError("term y^%r is not divisible by y^%r" % (beta, ell))
        res_terms[shifted] = c
    residual = Polynomial(p.dimension, res_terms)
    if residual.is_zero():
        raise PullbackError("zero residual")
    if residual.constant_term == 0:
        raise PullbackError("residual vanishes at the origin for cone %r" % (cone.generators,))
    d, M = decay_ratio(ell, jac)
    return Chart(cone, A, ell, jac, residual, d, M)


def verify_pullback(p, chart):
    """Independent symbolic check: compose ``p`` with the monomial map by
    polynomial multiplication and compare with ``y^ell * residual``."""
    composed = p.compose(monomial_map(chart.cone))
    return composed == Polynomial.monomial(chart.ell) * chart.residual


def jacobian_determinant(chart):
    """Expanded determinant of the chart's Jacobian matrix (a polynomial in y)."""
    xs = monomial_map(chart.cone)
    n = len(xs)
    J = [[xs[j].derivative(i + 1) for i in range(n)] for j in range(n)]
    return _poly_det(J)


def _poly_det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    total = Polynomial(M[0][0].dimension)
    for c in range(n):
        if M[0][c].is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in M[1:]]
        term = M[0][c] * _poly_det(minor)
        total = total + term if c % 2 == 0 else total - term
    return total


def charts_for(p, fan=None, np_=None):
    """Charts for every maximal cone of the smooth refinement of the normal fan."""
    if np_ is None:
        np_ = newton_polyhedron(p)
    if fan is None:
        fan = smooth_refinement(normal_fan(np_))
    return [pullback(p, c, np_) for c in fan.maximal_cones()]
