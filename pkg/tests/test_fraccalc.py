import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fraceco.fraccalc import (
    NonFiniteStateError,
    TimeGrid,
    Trajectory,
    caputo_derivative_of_samples,
    frac_order,
    gamma_fn,
    mittag_leffler,
    solve_caputo_ivp,
)

from oracles import erfc_series, ml_half, ml_reference

# frozen from the erfc series oracle (50-digit Maclaurin sum)
E_HALF_AT_ONE = 5.008980080762283


# --- orders and grids -------------------------------------------------------


@pytest.mark.parametrize("bad", [0.0, -0.1, 1.0000001, math.nan, 2.0])
def test_frac_order_rejects_out_of_range(bad):
    with pytest.raises(ValueError):
        frac_order(bad)


def test_frac_order_open_interval_variant():
    assert frac_order(1.0) == 1.0
    with pytest.raises(ValueError):
        frac_order(1.0, allow_one=False)


def test_grid_points_are_not_accumulated():
    g = TimeGrid(0.1, 0.1, 1000)
    t = g.times()
    assert t[1000] == 0.1 + 1000 * 0.1
    assert t[7] == g.time(7) == 0.1 + 7 * 0.1


@pytest.mark.parametrize("h,n", [(0.0, 10), (-1e-3, 10), (0.1, 0), (0.1, 2.5), (math.inf, 3)])
def test_grid_validation(h, n):
    with pytest.raises(ValueError):
        TimeGrid(0.0, h, n)


def test_grid_from_span():
    g = TimeGrid.from_span(0.0, 100.0, 0.01)
    assert g.n_steps == 10000 and g.t_end == pytest.approx(100.0)
    with pytest.raises(ValueError):
        TimeGrid.from_span(0.0, 1.0, 0.3)


def test_trajectory_rejects_nonfinite_and_bad_shape():
    g = TimeGrid(0.0, 0.5, 2)
    with pytest.raises(ValueError):
        Trajectory(g, np.array([[0.0], [np.nan], [1.0]]))
    with pytest.raises(ValueError):
        Trajectory(g, np.zeros((2, 1)))


# --- gamma --------------------------------------------------------------------


@pytest.mark.parametrize("x,expected", [(1, 1.0), (5, 24.0), (0.5, math.sqrt(math.pi)), (-0.5, -2 * math.sqrt(math.pi))])
def test_gamma_values(x, expected):
    assert gamma_fn(x) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("pole", [0, -1, -2, -7])
def test_gamma_poles(pole):
    with pytest.raises(ValueError):
        gamma_fn(pole)


# --- Mittag-Leffler ------------------------------------------------------------


def test_erfc_oracle_agrees_with_stdlib():
    for x in (-2.0, -0.3, 0.0, 0.7, 1.0, 2.5):
        assert erfc_series(x) == pytest.approx(math.erfc(x), rel=1e-14)


def test_ml_identities():
    assert mittag_leffler(1.0, 1.0) == pytest.approx(math.e, rel=1e-15)
    assert mittag_leffler(0.7, 0.0) == 1.0
    assert mittag_leffler(0.5, 1.0) == pytest.approx(E_HALF_AT_ONE, rel=1e-14)
    assert mittag_leffler(2.0, -(1.3**2)) == pytest.approx(math.cos(1.3), rel=1e-14)


@pytest.mark.parametrize("x", [-6.0, -4.0, -2.5, -1.0, -0.2, 0.4, 1.5, 3.0])
def test_ml_half_matches_erfc_form(x):
    assert mittag_leffler(0.5, x) == pytest.approx(ml_half(x), rel=1e-13)


@pytest.mark.parametrize("alpha,x", [(0.6, -2.63), (0.8, -3.6), (0.95, -4.6), (0.9, -40.0), (0.7, 5.0)])
def test_ml_matches_high_precision_series(alpha, x):
    assert mittag_leffler(alpha, x) == pytest.approx(ml_reference(alpha, x), rel=1e-12)


def test_ml_two_parameter():
    # E_{1,2}(x) = (e^x - 1)/x
    assert mittag_leffler(1.0, 0.8, beta=2.0) == pytest.approx(math.expm1(0.8) / 0.8, rel=1e-14)


@given(st.floats(-5, 5, allow_nan=False))
def test_ml_order_one_is_exponential(x):
    assert abs(mittag_leffler(1.0, x) - math.exp(x)) <= 1e-12 * math.exp(abs(x))


def test_ml_array_input_keeps_shape():
    xs = np.linspace(-1, 1, 6).reshape(2, 3)
    out = mittag_leffler(0.9, xs)
    assert out.shape == (2, 3)
    assert out[0, 0] == mittag_leffler(0.9, -1.0)


@pytest.mark.parametrize("kwargs", [{"alpha": 0.0, "x": 1.0}, {"alpha": 0.5, "x": 1.0, "beta": -1.0}, {"alpha": 0.5, "x": 41.0}, {"alpha": 0.5, "x": math.nan}])
def test_ml_domain_errors(kwargs):
    with pytest.raises(ValueError):
        mittag_leffler(**kwargs)


def test_ml_refuses_hopeless_cancellation():
    with pytest.raises(ValueError):
        mittag_leffler(0.3, -10.0)


# --- Caputo quadrature ------------------------------------------------------------


def test_caputo_of_constant_is_zero():
    g = TimeGrid(0.0, 0.01, 200)
    assert np.all(caputo_derivative_of_samples(np.full(201, 3.5), 0.5, g) == 0.0)


def test_caputo_order_one_is_first_difference():
    g = TimeGrid(0.0, 0.01, 100)
    d = caputo_derivative_of_samples(g.times(), 1.0, g)
    assert d[0] == 0.0
    np.testing.assert_allclose(d[1:], 1.0, rtol=1e-12)


def test_caputo_of_square_and_convergence_rate():
    exact = math.gamma(3.0) / math.gamma(2.5)
    errs = []
    for n in (250, 500, 1000, 2000):
        g = TimeGrid(0.0, 1.0 / n, n)
        errs.append(abs(caputo_derivative_of_samples(g.times() ** 2, 0.5, g)[-1] - exact))
    assert errs[2] / exact < 0.01
    rates = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
    assert min(rates) >= 0.9


def test_caputo_power_law_profile():
    g = TimeGrid(0.0, 1e-3, 1000)
    t = g.times()
    d = caputo_derivative_of_samples(t**2, 0.7, g)
    exact = math.gamma(3.0) / math.gamma(2.3) * t**1.3
    np.testing.assert_allclose(d[100:], exact[100:], rtol=2e-3)


def test_caputo_grid_mismatch():
    with pytest.raises(ValueError):
        caputo_derivative_of_samples(np.zeros(10), 0.5, TimeGrid(0.0, 0.1, 10))


# --- solver ---------------------------------------------------------------------


def test_solver_zero_rhs_is_constant():
    g = TimeGrid(0.0, 0.05, 50)
    for a in (0.3, 0.8, 1.0):
        tr = solve_caputo_ivp(lambda t, y: np.zeros(2), a, [0.2, 0.25], g)
        assert np.all(tr.states == np.array([0.2, 0.25]))


def test_solver_first_row_is_initial_state_exactly():
    y0 = [0.1234567890123, 0.3]
    tr = solve_caputo_ivp(lambda t, y: -y, 0.9, y0, TimeGrid(0.0, 0.1, 5))
    assert tr.states[0].tolist() == y0


def test_solver_exponential_at_order_one():
    tr = solve_caputo_ivp(lambda t, y: -y, 1.0, [1.0], TimeGrid(0.0, 1e-3, 1000))
    assert abs(tr.final[0] - math.exp(-1.0)) < 1e-5


def test_solver_order_one_is_second_order():
    errs = []
    for h in (0.02, 0.01, 0.005):
        g = TimeGrid.from_span(0.0, 5.0, h)
        tr = solve_caputo_ivp(lambda t, y: -y, 1.0, [1.0], g)
        errs.append(np.max(np.abs(tr.states[:, 0] - np.exp(-g.times()))))
    assert errs[0] / errs[1] >= 3.5 and errs[1] / errs[2] >= 3.5


def test_solver_matches_mittag_leffler_relaxation():
    g = TimeGrid(0.0, 1e-3, 5000)
    tr = solve_caputo_ivp(lambda t, y: -y, 0.8, [1.0], g)
    exact = mittag_leffler(0.8, -(g.times() ** 0.8))
    assert np.max(np.abs(tr.states[:, 0] - exact) / exact) <= 1e-3


def test_solver_time_dependent_forcing():
    # D^a y = Gamma(3)/Gamma(3-a) t^(2-a) has solution y = t^2
    a = 0.6
    c = math.gamma(3.0) / math.gamma(3.0 - a)
    g = TimeGrid(0.0, 1e-3, 1000)
    tr = solve_caputo_ivp(lambda t, y: np.array([c * t ** (2 - a)]), a, [0.0], g)
    np.testing.assert_allclose(tr.states[-1, 0], 1.0, rtol=1e-4)


def test_solver_reports_nonfinite_step():
    g = TimeGrid(0.0, 0.1, 100)
    with pytest.raises(NonFiniteStateError) as info:
        solve_caputo_ivp(lambda t, y: y**2, 1.0, [1.0], g)
    assert info.value.step > 0
    assert info.value.time == pytest.approx(g.time(info.value.step))


def test_solver_input_validation():
    g = TimeGrid(0.0, 0.1, 3)
    with pytest.raises(ValueError):
        solve_caputo_ivp(lambda t, y: y, 1.2, [1.0], g)
    with pytest.raises(ValueError):
        solve_caputo_ivp(lambda t, y: y, 0.5, [np.inf], g)
    with pytest.raises(ValueError):
        solve_caputo_ivp(lambda t, y: np.zeros(3), 0.5, [1.0, 2.0], g)
    with pytest.raises(ValueError):
        solve_caputo_ivp(lambda t, y: y, 0.5, [1.0], g, memory=0)


def test_short_memory_window():
    g = TimeGrid(0.0, 0.01, 400)
    full = solve_caputo_ivp(lambda t, y: -y, 0.7, [1.0], g)
    wide = solve_caputo_ivp(lambda t, y: -y, 0.7, [1.0], g, memory=10_000)
    short = solve_caputo_ivp(lambda t, y: -y, 0.7, [1.0], g, memory=50)
    assert np.array_equal(full.states, wide.states)
    assert np.array_equal(full.states[:50], short.states[:50])
    assert not np.allclose(full.final, short.final, rtol=1e-3)


@given(st.floats(0.2, 1.0), st.floats(0.1, 2.0))
def test_linear_decay_stays_in_unit_interval(alpha, lam):
    tr = solve_caputo_ivp(lambda t, y: -lam * y, alpha, [1.0], TimeGrid(0.0, 0.05, 100))
    assert np.all(tr.states > 0.0) and np.all(tr.states <= 1.0 + 1e-12)
