import logging
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from newton_osc.decay import DecayPrediction, predict_main
from newton_osc.errors import InputError
from newton_osc.polynomial import Polynomial
from newton_osc.quadrature import BumpSpec
from newton_osc.sweep import (NOISE_FLOOR, default_grid, fit_exponent, fit_log_power, lambda_grid,
                              normalised_statistic, phase_scaling_gap, sweep_and_fit, vdc_bound_statistic)


def P(text, n=2):
    return Polynomial.parse(text, n)


def test_grid():
    assert default_grid(1) == (1e2, 1e5, 24)
    assert default_grid(3) == (1e2, 1e4, 24)
    g = lambda_grid(1e2, 1e5, 24)
    assert len(g) == 24 and g[0] == pytest.approx(1e2) and g[-1] == pytest.approx(1e5)
    assert np.allclose(np.diff(np.log(g)), np.log(g[1] / g[0]))
    with pytest.raises(InputError):
        lambda_grid(5, 1e3, 24)
    with pytest.raises(InputError):
        lambda_grid(1e2, 1e3, 7)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 2.0), st.integers(0, 3), st.floats(-3, 3))
def test_fits_recover_synthetic_model(p, m, c):
    lams = lambda_grid(1e2, 1e5, 24)
    vals = np.exp(c) * lams ** -p * np.log(lams) ** m * np.exp(1j * lams)
    fe = fit_exponent(lams, vals, m)
    assert fe.exponent == pytest.approx(p, abs=1e-9) and fe.residual_rms < 1e-9
    fl = fit_log_power(lams, vals, p)
    assert fl.log_power == pytest.approx(m, abs=1e-9)


def test_noise_floor_points_are_dropped(caplog):
    lams = lambda_grid(1e2, 1e5, 24)
    vals = lams ** -0.5
    vals[-3:] = NOISE_FLOOR * 1e-3
    pred = DecayPrediction(Fraction(1, 2), 0, "main_theorem")
    with caplog.at_level(logging.WARNING):
        res = sweep_and_fit(P("x1^2", 1), predicted=pred, values=vals)
    assert "noise floor" in caplog.text
    assert res.fit_mask.sum() == np.sum(lams >= 1e3) - 3
    assert res.fitted_exponent == pytest.approx(0.5, abs=1e-9)


def test_one_dimensional_sweep():
    p = P("x1^2", 1)
    res = sweep_and_fit(p, predicted=predict_main(p))
    assert abs(res.fitted_exponent - 0.5) < 0.02
    rows = list(res.csv_rows())
    assert rows[0] == ["lambda", "re", "im", "abs", "nodes_per_axis", "converged"]
    assert len(rows) == 25 and all(r[-1] == "true" for r in rows[1:])
    d = res.to_dict()
    assert d["points"] == 24 and d["max_convergence_delta"] < 1e-6


def test_integer_case_records_remark_fit():
    p = P("x1^2 + x2^2")
    pred = predict_main(p)
    res = sweep_and_fit(p, None, None, 1e2, 1e4, 16, pred)
    remark = res.extra_fits["fitted_exponent_remark"]
    assert remark.log_power == 0 and abs(remark.exponent - 1) < 0.07
    forced = sweep_and_fit(p, None, None, 1e2, 1e4, 16, pred, fit_log_power_value=0, values=res.values)
    assert forced.fitted_exponent == pytest.approx(remark.exponent)


def test_damped_one_dimensional_statistic():
    s = vdc_bound_statistic((2,), (1,), BumpSpec((0.5,)))
    assert s.exponent == 1 and s.log_power == 0
    assert s.ratio < 10


def test_statistic_normalisation():
    lams = np.array([1e2, 1e3])
    st_ = normalised_statistic(lams, lams ** -0.5 * np.log(lams), Fraction(1, 2), 1)
    assert np.allclose(st_, 1.0)


def test_phase_scaling_gap_helper():
    assert phase_scaling_gap(P("x1^3 + x2^2"), 2, 150.0) < 1e-6
