import math

import numpy as np
import pytest
from scipy.integrate import quad

from newton_osc.errors import ConvergenceError, InputError
from newton_osc.polynomial import Polynomial
from newton_osc.quadrature import (BumpSpec, bump_mass, bump_value, composite_rule, oscillatory_integral,
                                   variable_groups)


def P(text, n=2):
    return Polynomial.parse(text, n)


def phi(x, r):
    return math.exp(1 - 1 / (1 - (x / r) ** 2)) if abs(x) < r else 0.0


def test_bump_examples():
    assert bump_value(BumpSpec.uniform(2), (0, 0)) == 1
    assert bump_value(BumpSpec.uniform(2), (0.5, 0.1)) == 0
    assert bump_value(BumpSpec.uniform(1, 1.0), (1.0,)) == 0
    assert bump_value(BumpSpec.uniform(1, 1.0), (0.5,)) == pytest.approx(math.exp(1 - 4 / 3), abs=1e-15)
    assert bump_value(BumpSpec((1.0, 0.5)), (0.5, 0.0)) == pytest.approx(math.exp(1 - 4 / 3))
    with pytest.raises(InputError):
        BumpSpec((0.5, -1.0))


def test_composite_rule_integrates_polynomials():
    x, w = composite_rule(-1.0, 2.0, 3000)
    assert np.sum(w * x ** 7) == pytest.approx((2 ** 8 - 1) / 8, rel=1e-13)


def test_variable_groups():
    assert variable_groups(np.array([[2, 0, 0], [0, 1, 1]]), 3) == [[0], [1, 2]]
    assert variable_groups(np.array([[1, 1, 0], [0, 1, 1]]), 3) == [[0, 1, 2]]


@pytest.mark.parametrize("r,beta", [(0.5, 0), (1.0, 0), (0.7, 2), (0.5, 3)])
def test_mass_matches_quad(r, beta):
    ref = quad(lambda x: abs(x) ** beta * phi(x, r), -r, r, epsabs=1e-14, epsrel=1e-13)[0]
    assert bump_mass(BumpSpec((r,)), (beta,)) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("text,n,beta", [("x1^2*x2", 2, (0, 0)), ("x1^3 + x2^2", 2, (1, 0)),
                                         ("x1^2", 1, (0,)), ("x1^2 + x2^2 + x1*x2*x3", 3, (0, 1, 0))])
def test_lambda_zero_gives_the_mass(text, n, beta):
    bump = BumpSpec.uniform(n)
    v = oscillatory_integral(P(text, n), beta, bump, 0.0)
    assert v.imag == 0
    ref = 1.0
    for b in beta:
        ref *= quad(lambda x: abs(x) ** b * phi(x, 0.5), -0.5, 0.5, epsabs=1e-14)[0]
    assert v.real == pytest.approx(ref, rel=1e-9)


def test_stationary_phase_oracle():
    lam = 400.0
    v = oscillatory_integral(P("x1^2", 1), None, BumpSpec((1.0,)), lam)
    assert abs(abs(v) - math.sqrt(math.pi / lam)) < 0.05 * math.sqrt(math.pi / lam)
    # reference by the substitution t = x^2 on the half axis
    ref = 2 * quad(lambda t: phi(math.sqrt(t), 1.0) / (2 * math.sqrt(t)) if t > 0 else 0.0, 0, 1,
                   weight="cos", wvar=lam, limit=2000)[0]
    refi = 2 * quad(lambda t: phi(math.sqrt(t), 1.0) / (2 * math.sqrt(t)) if t > 0 else 0.0, 0, 1,
                    weight="sin", wvar=lam, limit=2000)[0]
    assert abs(v - complex(ref, refi)) < 1e-6 * abs(v)


@pytest.mark.parametrize("lam", [50.0, 100.0, 150.0])
def test_linear_phase_matches_fourier_oracle(lam):
    bump = BumpSpec((1.0,))
    v = oscillatory_integral(P("x1", 1), None, bump, lam)
    ref = quad(lambda x: phi(x, 1.0), -1, 1, weight="cos", wvar=lam, epsabs=1e-15, limit=500)[0]
    assert v.imag == pytest.approx(0, abs=1e-13)
    assert abs(v.real - ref) < 1e-11


def test_linear_phase_is_rapidly_decreasing():
    bump = BumpSpec((1.0,))
    mass = oscillatory_integral(P("x1", 1), None, bump, 0.0).real
    ratios = [abs(oscillatory_integral(P("x1", 1), None, bump, lam)) / mass for lam in (100, 150, 300)]
    assert ratios[0] > ratios[1] > ratios[2]
    assert ratios[2] < 1e-6


@pytest.mark.parametrize("lam", [1e2, 1e3, 1e4])
def test_monomial_spot_values_against_nested_quad(lam):
    # inner integral over x2 is the cosine transform of the bump at lam*x1^2
    def inner(x1):
        w = lam * x1 * x1
        if w == 0:
            return quad(lambda t: phi(t, 0.5), -0.5, 0.5)[0]
        return 2 * quad(lambda t: phi(t, 0.5), 0, 0.5, weight="cos", wvar=w, epsabs=1e-14, limit=400)[0]

    ref = 2 * quad(lambda x: phi(x, 0.5) * inner(x), 0, 0.5, epsabs=1e-13, epsrel=1e-10, limit=400)[0]
    v = oscillatory_integral(P("x1^2*x2"), None, BumpSpec.uniform(2), lam)
    assert v.imag == pytest.approx(0, abs=1e-9 * abs(ref))
    assert v.real == pytest.approx(ref, rel=1e-6)


@pytest.mark.parametrize("text", ["x1^2*x2", "x1^3 + x2^2", "x1^2 + x2^2", "x1^2*x2 + x2^5"])
def test_phase_scaling_covariance(text):
    p = P(text)
    for lam in (30.0, 300.0, 3000.0):
        a = abs(oscillatory_integral(p * 2, None, None, lam))
        b = abs(oscillatory_integral(p, None, None, 2 * lam))
        assert a == pytest.approx(b, rel=1e-6, abs=1e-12)


def test_permutation_invariance():
    for lam in (50.0, 500.0):
        a = oscillatory_integral(P("x1^2*x2 + x2^5"), None, None, lam)
        b = oscillatory_integral(P("x2^2*x1 + x1^5"), None, None, lam)
        assert abs(a - b) < 1e-7 * abs(a)


@pytest.mark.parametrize("text", ["x1^2*x2", "x1^3 + x2^2", "x1^2*x2 + x2^5"])
def test_conjugation_symmetry(text):
    for lam in (20.0, 200.0, 2000.0):
        a = oscillatory_integral(P(text), None, None, lam)
        b = oscillatory_integral(P(text), None, None, -lam)
        assert abs(b - a.conjugate()) < 1e-7 * abs(a)


def test_diagnostics_and_errors():
    res = oscillatory_integral(P("x1^2*x2"), None, None, 1e3, full_output=True)
    assert res.converged and res.delta < 1e-6 and all(n >= 64 for n in res.nodes_per_axis)
    with pytest.raises(ConvergenceError) as e:
        oscillatory_integral(P("x1^2*x2*x3", 3), None, None, 1e6)
    assert e.value.to_dict()["nodes_per_axis"]
    with pytest.raises(InputError):
        oscillatory_integral(P("x1^2"), None, None, 1.0, quad_tol=0)
    with pytest.raises(InputError):
        oscillatory_integral(P("x1^2"), (0, -1), None, 1.0)
    with pytest.raises(InputError):
        oscillatory_integral(P("x1^2"), None, BumpSpec.uniform(3), 1.0)


def test_constant_term_is_a_phase_factor():
    a = oscillatory_integral(P("x1^2*x2 + 3"), None, None, 10.0)
    b = oscillatory_integral(P("x1^2*x2"), None, None, 10.0)
    assert abs(a - b * np.exp(30j)) < 1e-12
