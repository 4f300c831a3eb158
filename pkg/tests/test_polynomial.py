from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from newton_osc.errors import InputError, PolynomialSyntaxError
from newton_osc.polynomial import Polynomial, evaluate, format_polynomial, partial_derivative


def test_parse_examples():
    assert Polynomial.parse("x1^2*x2", 2).terms == {(2, 1): 1}
    assert Polynomial.parse("x1^2 + 2*x1*x2^3 - x1^2", 2).terms == {(1, 3): 2}
    assert Polynomial.parse("x1^3 + x2^2", 2).terms == {(3, 0): 1, (0, 2): 1}


def test_parse_rational_and_whitespace():
    p = Polynomial.parse("  -2/5 * x1 ^ 2 +3*x2  ", 2)
    assert p.terms == {(2, 0): Fraction(-2, 5), (0, 1): 3}
    assert Polynomial.parse("x1*x1*x2", 2).terms == {(2, 1): 1}


@pytest.mark.parametrize("text", ["x1^", "x1 +", "2**x1", "x1^-2", "x1^0", "(x1", "x0", "y1", "x1^1.5", "1/0*x1"])
def test_parse_errors(text):
    with pytest.raises(InputError):
        Polynomial.parse(text, 2)


def test_parse_error_reports_position():
    with pytest.raises(PolynomialSyntaxError) as e:
        Polynomial.parse("x1 + x5", 2)
    assert e.value.position == 5


def test_evaluate_examples():
    assert evaluate(Polynomial.parse("x1^2*x2", 2), (2, 3)) == 12
    assert evaluate(Polynomial.parse("x1^3 + x2^2", 2), (1, -1)) == 2
    p = Polynomial.parse("7 + x1*x2", 2)
    assert evaluate(p, (0, 0)) == 7
    assert isinstance(evaluate(p, (Fraction(1, 3), 2)), Fraction)
    with pytest.raises(InputError):
        evaluate(p, (1, 2, 3))


def test_partial_derivative_examples():
    p = Polynomial.parse("x1^2*x2", 2)
    assert partial_derivative(p, 1).terms == {(1, 1): 2}
    assert partial_derivative(p, 2).terms == {(2, 0): 1}
    assert partial_derivative(Polynomial.constant(2, 5), 1).is_zero()
    with pytest.raises(InputError):
        partial_derivative(p, 3)
    with pytest.raises(InputError):
        partial_derivative(p, 0)


def test_zero_polynomial_prints():
    assert format_polynomial(Polynomial(2)) == "0"
    assert Polynomial.parse("x1 - x1", 2).is_zero()


monomials = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 3))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.dictionaries(monomials, coeffs, max_size=6).map(lambda d: Polynomial(3, d))
points = st.tuples(*[st.fractions(min_value=-3, max_value=3, max_denominator=5)] * 3)


@settings(max_examples=150, deadline=None)
@given(polys)
def test_print_parse_roundtrip(p):
    assert Polynomial.parse(format_polynomial(p), 3) == p


@settings(max_examples=100, deadline=None)
@given(polys, polys, points)
def test_evaluation_is_linear_and_multiplicative(p, q, x):
    assert evaluate(p + q, x) == evaluate(p, x) + evaluate(q, x)
    assert evaluate(p * q, x) == evaluate(p, x) * evaluate(q, x)


@settings(max_examples=100, deadline=None)
@given(polys, st.tuples(*[st.floats(-1.5, 1.5)] * 3), st.integers(1, 3))
def test_derivative_matches_central_difference(p, x, axis):
    h = 1e-4
    up = list(x)
    dn = list(x)
    up[axis - 1] += h
    dn[axis - 1] -= h
    fd = (evaluate(p, up) - evaluate(p, dn)) / (2 * h)
    exact = evaluate(partial_derivative(p, axis), x)
    scale = 1 + sum(abs(float(c)) for c in p.terms.values()) * 10
    assert abs(fd - exact) <= scale * h * h * 50


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_compose_agrees_with_exponent_substitution(p, _):
    # x1 = y1*y2, x2 = y2, x3 = y2*y3
    M = ((1, 1, 0), (0, 1, 0), (0, 1, 1))
    images = [Polynomial.monomial(row) for row in M]
    assert p.substitute_monomials(M) == p.compose(images)
