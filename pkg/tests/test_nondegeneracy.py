from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from newton_osc.errors import InputError
from newton_osc.newton import enumerate_compact_faces, gamma_part, newton_polyhedron
from newton_osc.nondegeneracy import (DEGENERATE, NONDEGENERATE, NUMERIC, check_all, check_face,
                                      quasi_homogeneous_weight)
from newton_osc.polynomial import Polynomial, evaluate

import catalogue
from strategies import phases as random_phases


def P(text, n=2):
    return Polynomial.parse(text, n)


def _edge(p):
    return next(f for f in enumerate_compact_faces(newton_polyhedron(p)) if f.dimension == 1)


def test_face_examples():
    p = P("x1^2 + x2^2")
    assert check_face(p, _edge(p)).verdict == NONDEGENERATE
    p = P("x1^2 + 2*x1*x2 + x2^2")
    v = check_face(p, _edge(p))
    assert v.verdict == DEGENERATE and v.exact
    assert v.witness[0] == -v.witness[1] != 0
    p = P("x1^2*x2")
    assert check_face(p, enumerate_compact_faces(newton_polyhedron(p))[0]).verdict == NONDEGENERATE


def test_report_examples():
    assert check_all(P("x1^2 + x2^2")).nondegenerate
    r = check_all(P("x1^2 + 2*x1*x2 + x2^2"))
    assert r.overall == DEGENERATE and not r.nondegenerate
    bad = r.first_failure()
    assert bad.face.dimension == 1
    r = check_all(P("x1^2*x2^2"))
    assert len(r.entries) == 1 and r.overall == NONDEGENERATE


def test_non_compact_face_rejected():
    p = P("x1^2*x2")
    with pytest.raises(InputError):
        check_face(p, newton_polyhedron(p).distance.principal_face)


@pytest.mark.parametrize("text", catalogue.CATALOGUE)
def test_catalogue_is_nondegenerate(text):
    assert check_all(P(text)).overall == NONDEGENERATE


def test_three_variables_numeric():
    assert check_all(P("x1^2 + x2^2 + x3^2", 3)).overall == NUMERIC
    r = check_all(P("x1^2 - 2*x1*x3 + x3^2 + x2^4", 3))
    assert r.overall == DEGENERATE
    bad = r.first_failure()
    grads = bad.gamma_part.gradient()
    assert all(x != 0 for x in bad.witness)
    assert max(abs(float(evaluate(g, bad.witness))) for g in grads) < 1e-10


def test_numeric_verdict_is_seed_reproducible():
    p = P("x1^4 + x2^4 + x3^4 + x1*x2*x3", 3)
    a = [(e.verdict, e.residual) for e in check_all(p, seed=3).entries]
    b = [(e.verdict, e.residual) for e in check_all(p, seed=3).entries]
    assert a == b


@settings(max_examples=60, deadline=None)
@given(random_phases(2), st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=5))
def test_quasi_homogeneity(p, t):
    for face in enumerate_compact_faces(newton_polyhedron(p)):
        w, L = quasi_homogeneous_weight(p, face)
        fg = gamma_part(p, face)
        x = (Fraction(2, 3), Fraction(-5, 7))
        scaled = tuple(t ** wi * xi for wi, xi in zip(w, x))
        assert evaluate(fg, scaled) == t ** L * evaluate(fg, x)


@settings(max_examples=60, deadline=None)
@given(random_phases(2, top=4, max_size=4), st.integers(-3, 3).filter(bool))
def test_witnesses_are_exact_critical_points(p, c):
    # (x1 + c x2)^2 is degenerate on its edge
    q = (Polynomial.variable(2, 1) + Polynomial.variable(2, 2) * c) ** 2
    assert check_all(q).overall == DEGENERATE
    for e in check_all(q).entries + check_all(p).entries:
        if e.verdict == DEGENERATE:
            assert all(x != 0 for x in e.witness)
            assert all(evaluate(g, e.witness) == 0 for g in e.gamma_part.gradient())
