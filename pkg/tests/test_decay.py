from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from newton_osc.charts import charts_for
from newton_osc.decay import (KEY, MAIN, MONOMIAL, WEIGHTED, is_integer_reciprocal, predict_main,
                              predict_monomial, predict_weighted)
from newton_osc.errors import DegeneratePhaseError, HypothesisError, InputError
from newton_osc.newton import newton_polyhedron
from newton_osc.polynomial import Polynomial

import catalogue
from strategies import phases as random_phases


def P(text, n=2):
    return Polynomial.parse(text, n)


def pair(pred):
    return pred.exponent, pred.log_power


def test_main_examples():
    assert pair(predict_main(P("x1^2*x2"))) == (Fraction(1, 2), 0)
    assert pair(predict_main(P("x1^2*x2^2"))) == (Fraction(1, 2), 1)
    pred = predict_main(P("x1^2 + x2^2"))
    assert pair(pred) == (1, 1) and pred.integer_case and pred.source == MAIN
    assert pred.remark_log_power == 0 and pred.note
    assert predict_main(P("x1^3 + x2^2")).remark_log_power is None
    assert isinstance(pred.exponent, Fraction) and isinstance(pred.log_power, int)


def test_monomial_examples():
    assert pair(predict_monomial((2, 1))) == (Fraction(1, 2), 0)
    assert predict_monomial((2, 1)).source == MONOMIAL
    assert pair(predict_monomial((2, 2))) == (Fraction(1, 2), 1)
    pred = predict_monomial((3, 2), (1, 0))
    assert pair(pred) == (Fraction(1, 2), 0) and pred.source == KEY
    with pytest.raises(InputError):
        predict_monomial((0, 0))


def test_weighted_examples():
    assert pair(predict_weighted(P("x1^2*x2^2"), (0, 0))) == (Fraction(1, 2), 1)
    assert pair(predict_weighted(P("x1^2 + x2^2"), (0, 0))) == (1, 0)
    pred = predict_weighted(P("x1^2*x2^2"), (1, 1))
    assert pair(pred) == (1, 1) and pred.source == WEIGHTED


def test_gate():
    with pytest.raises(DegeneratePhaseError) as e:
        predict_main(P("x1^2 + 2*x1*x2 + x2^2"))
    assert e.value.to_dict()["witness"] is not None
    with pytest.raises(HypothesisError):
        predict_main(P("x1 + x2^2"))
    assert predict_main(P("x1^2 + x2^2 + x3^2", 3)).confidence == "numeric"
    assert predict_main(P("x1^2 + x2^2")).confidence == "exact"


def test_integer_reciprocal():
    assert is_integer_reciprocal(Fraction(1, 3))
    assert is_integer_reciprocal(1)
    assert not is_integer_reciprocal(Fraction(2, 3))
    assert not is_integer_reciprocal(Fraction(6, 5))


@pytest.mark.parametrize("text", catalogue.CATALOGUE)
def test_consistency_with_distance_and_charts(text):
    p = P(text)
    pred = predict_main(p)
    d = newton_polyhedron(p).distance
    assert pred.exponent == 1 / d.d_f
    assert pred.exponent == 1 / max(c.chart_d for c in charts_for(p))
    w = predict_weighted(p, (0, 0))
    assert w.exponent == pred.exponent
    if not pred.integer_case:
        assert w.log_power == pred.log_power


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=4).filter(any), st.randoms(use_true_random=False))
def test_monomial_permutation_invariance(alpha, rnd):
    perm = list(alpha)
    rnd.shuffle(perm)
    assert pair(predict_monomial(alpha)) == pair(predict_monomial(perm))


@settings(max_examples=40, deadline=None)
@given(random_phases(2), st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=9))
def test_scaling_invariance(p, c):
    try:
        base = predict_main(p)
    except DegeneratePhaseError:
        return
    scaled = predict_main(p * c)
    assert pair(scaled) == pair(base) and scaled.integer_case == base.integer_case


@settings(max_examples=40, deadline=None)
@given(random_phases(2))
def test_weighted_matches_main_at_zero(p):
    try:
        main = predict_main(p)
    except DegeneratePhaseError:
        return
    w = predict_weighted(p, (0, 0))
    assert w.exponent == main.exponent
    if not main.integer_case:
        assert w.log_power == main.log_power
