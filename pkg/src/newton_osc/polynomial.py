"""Sparse multivariate polynomials with exact rational coefficients.

Variables are addressed by position: ``x1 .. xn``.  A :class:`Polynomial`
is immutable; arithmetic returns new objects.
"""

from fractions import Fraction
from numbers import Rational
import re

from .errors import InputError, PolynomialSyntaxError


def _as_exponent(alpha, dimension=None):
    alpha = tuple(int(a) for a in alpha)
    if dimension is not None and len(alpha) != dimension:
        raise InputError("exponent %r has length %d, expected %d" % (alpha, len(alpha), dimension))
    if any(a < 0 for a in alpha):
        raise InputError("negative exponent in %r" % (alpha,))
    return alpha


class Polynomial:
    """An exact polynomial in ``dimension`` variables.

    ``terms`` maps exponent tuples to nonzero :class:`~fractions.Fraction`
    coefficients.
    """

    __slots__ = ("_dim", "_terms", "_hash")

    def __init__(self, dimension, terms=None):
        if int(dimension) < 1:
            raise InputError("dimension must be >= 1")
        self._dim = int(dimension)
        clean = {}
        for alpha, c in (terms or {}).items():
            alpha = _as_exponent(alpha, self._dim)
            c = Fraction(c)
            if c:
                clean[alpha] = clean.get(alpha, 0) + c
                if not clean[alpha]:
                    del clean[alpha]
        self._terms = clean
        self._hash = None

    # -- construction ---------------------------------------------------

    @classmethod
    def parse(cls, text, dimension):
        return parse_polynomial(text, dimension)

    @classmethod
    def monomial(cls, alpha, coefficient=1):
        alpha = tuple(alpha)
        return cls(len(alpha), {alpha: coefficient})

    @classmethod
    def constant(cls, dimension, value):
        return cls(dimension, {(0,) * dimension: value})

    @classmethod
    def variable(cls, dimension, index):
        """The coordinate ``x_index`` (1-based)."""
        if not 1 <= index <= dimension:
            raise InputError("variable index %d outside 1..%d" % (index, dimension))
        alpha = [0] * dimension
        alpha[index - 1] = 1
        return cls(dimension, {tuple(alpha): 1})

    # -- basic protocol ---------------------------------------------------

    @property
    def dimension(self):
        return self._dim

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), reverse=True)

    @property
    def support(self):
        return sorted(self._terms, reverse=True)

    def coefficient(self, alpha):
        return self._terms.get(tuple(alpha), Fraction(0))

    @property
    def constant_term(self):
        return self.coefficient((0,) * self._dim)

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._dim == other._dim and self._terms == other._terms
        if isinstance(other, (Rational, int)):
            return self == Polynomial.constant(self._dim, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return "Polynomial(%d, %r)" % (self._dim, str(self))

    def __str__(self):
        return format_polynomial(self)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other._dim != self._dim:
                raise InputError("dimension mismatch: %d vs %d" % (self._dim, other._dim))
            return other
        if isinstance(other, (Rational, int)):
            return Polynomial.constant(self._dim, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for alpha, c in other._terms.items():
            out[alpha] = out.get(alpha, 0) + c
        return Polynomial(self._dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self._dim, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for a1, c1 in self._terms.items():
            for a2, c2 in other._terms.items():
                a = tuple(i + j for i, j in zip(a1, a2))
                out[a] = out.get(a, 0) + c1 * c2
        return Polynomial(self._dim, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if int(k) != k or k < 0:
            raise InputError("only nonnegative integer powers are supported")
        result = Polynomial.constant(self._dim, 1)
        base = self
        k = int(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and evaluation -----------------------------------------

    def evaluate(self, point):
        return evaluate(self, point)

    def derivative(self, axis):
        return partial_derivative(self, axis)

    def gradient(self):
        return [partial_derivative(self, j) for j in range(1, self._dim + 1)]

    def degree(self):
        return max((sum(a) for a in self._terms), default=-1)

    def restrict(self, exponents):
        """Sub-sum over the given exponent vectors."""
        keep = set(map(tuple, exponents))
        return Polynomial(self._dim, {a: c for a, c in self._terms.items() if a in keep})

    def substitute_monomials(self, matrix):
        """Compose with the monomial map ``x_j = prod_i y_i^matrix[j][i]``.

        Works on exponents directly: the term ``x^a`` becomes ``y^(M^T a)``.
        """
        n = self._dim
        if len(matrix) != n:
            raise InputError("monomial map must have %d rows" % n)
        m = len(matrix[0])
        out = {}
        for alpha, c in self._terms.items():
            beta = tuple(sum(matrix[j][i] * alpha[j] for j in range(n)) for i in range(m))
            out[beta] = out.get(beta, 0) + c
        return Polynomial(m, out)

    def compose(self, images):
        """Substitute polynomials ``images[j]`` for ``x_{j+1}``."""
        if len(images) != self._dim:
            raise InputError("need %d images" % self._dim)
        m = images[0].dimension
        result = Polynomial(m)
        powers = [{} for _ in images]
        for alpha, c in self._terms.items():
            term = Polynomial.constant(m, c)
            for j, e in enumerate(alpha):
                if e:
                    if e not in powers[j]:
                        powers[j][e] = images[j] ** e
                    term = term * powers[j][e]
            result = result + term
        return result

    def to_float_arrays(self):
        """Return ``(exponents, coefficients)`` as numpy arrays for fast numerics."""
        import numpy as np

        items = self.items()
        exps = np.array([a for a, _ in items], dtype=np.int64).reshape(len(items), self._dim)
        coefs = np.array([float(c) for _, c in items], dtype=float)
        return exps, coefs


def evaluate(p, point):
    """Evaluate ``p`` at ``point``; exact inputs give exact outputs."""
    point = tuple(point)
    if len(point) != p.dimension:
        raise InputError("point has length %d, polynomial dimension is %d" % (len(point), p.dimension))
    total = 0
    for alpha, c in p._terms.items():
        term = c
        for x, e in zip(point, alpha):
            if e:
                term = term * x ** e
        total = total + term
    if isinstance(total, int):
        return Fraction(total)
    return total


def partial_derivative(p, axis):
    """Derivative in ``x_axis`` (1-based)."""
    if not 1 <= axis <= p.dimension:
        raise InputError("axis %d outside 1..%d" % (axis, p.dimension))
    j = axis - 1
    out = {}
    for alpha, c in p._terms.items():
        if alpha[j]:
            beta = alpha[:j] + (alpha[j] - 1,) + alpha[j + 1:]
            out[beta] = c * alpha[j]
    return Polynomial(p.dimension, out)


# -- text form ---------------------------------------------------------------

def _format_monomial(alpha, var="x"):
    parts = []
    for i, e in enumerate(alpha, start=1):
        if e == 1:
            parts.append("%s%d" % (var, i))
        elif e > 1:
            parts.append("%s%d^%d" % (var, i, e))
    return "*".join(parts)


def format_polynomial(p, var="x"):
    """Canonical text: terms by descending exponent tuple, ``x1^2*x2 - 1/2*x2``."""
    if p.is_zero():
        return "0"
    out = []
    for k, (alpha, c) in enumerate(p.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = _format_monomial(alpha, var)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = "%s*%s" % (mag, mono)
        if k == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(" %s %s" % (sign, body))
    return "".join(out)


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:\.\d*)?(?:/\d+)?)"
    r"|(?P<var>x(?P<idx>\d+))"
    r"|(?P<op>[-+*^])"
    r")"
)


def _tokenize(text):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError("unexpected character %r" % text[pos], pos)
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("var") is not None:
            tokens.append(("var", int(m.group("idx")), m.start("var")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


def parse_polynomial(text, dimension):
    """Parse ``text`` into a :class:`Polynomial` in ``dimension`` variables.

    Terms are joined by ``+``/``-``; a term is an optional rational
    coefficient and factors ``xK`` or ``xK^E`` joined by ``*``.

    >>> str(parse_polynomial("x1^2 + 2*x1*x2^3 - x1^2", 2))
    '2*x1*x2^3'
    """
    dimension = int(dimension)
    if dimension < 1:
        raise InputError("dimension must be >= 1")
    if not isinstance(text, str):
        raise InputError("phase must be a string")
    tokens = _tokenize(text)
    i = 0
    terms = {}

    def peek():
        return tokens[i]

    def parse_factor():
        nonlocal i
        kind, val, pos = tokens[i]
        if kind == "num":
            i += 1
            try:
                coef = Fraction(val)
            except ZeroDivisionError:
                raise PolynomialSyntaxError("division by zero in coefficient", pos)
            return coef, None
        if kind == "var":
            i += 1
            if not 1 <= val <= dimension:
                raise PolynomialSyntaxError(
                    "variable x%d exceeds dimension %d" % (val, dimension), pos)
            e = 1
            if peek()[0] == "op" and peek()[1] == "^":
                i += 1
                kind2, val2, pos2 = tokens[i]
                if kind2 == "op" and val2 == "-":
                    raise PolynomialSyntaxError("negative exponent", pos2)
                if kind2 != "num" or not val2.isdigit():
                    raise PolynomialSyntaxError("exponent must be a positive integer", pos2)
                e = int(val2)
                if e == 0:
                    raise PolynomialSyntaxError("exponent must be a positive integer", pos2)
                i += 1
            alpha = [0] * dimension
            alpha[val - 1] = e
            return Fraction(1), tuple(alpha)
        raise PolynomialSyntaxError("expected a coefficient or variable", pos)

    def parse_term(sign):
        nonlocal i
        coef, alpha = parse_factor()
        coef *= sign
        mono = [0] * dimension
        if alpha:
            mono = list(alpha)
        while peek()[0] == "op" and peek()[1] == "*":
            i += 1
            c, a = parse_factor()
            coef *= c
            if a:
                mono = [x + y for x, y in zip(mono, a)]
        return tuple(mono), coef

    sign = 1
    kind, val, pos = peek()
    if kind == "end":
        raise PolynomialSyntaxError("empty expression", pos)
    if kind == "op" and val in "+-":
        sign = -1 if val == "-" else 1
        i += 1
    while True:
        alpha, c = parse_term(sign)
        terms[alpha] = terms.get(alpha, 0) + c
        kind, val, pos = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            continue
        raise PolynomialSyntaxError("expected '+', '-' or end of input", pos)
    return Polynomial(dimension, terms)
