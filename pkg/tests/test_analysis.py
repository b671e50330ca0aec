import numpy as np
import pytest

from qwparrondo.analysis import compare_to_game_A, diagnose, linear_trend, up_crossings
from qwparrondo.evolution import expectation_series

T = np.arange(1, 1001, dtype=float)


def series(x):
    return np.column_stack([T[: len(x)], x])


def test_constant_series():
    d = diagnose(series(np.full(50, -1.0)))
    assert d.first_sign_change is None
    assert d.last_positive_step is None
    assert d.linear_trend_slope == 0.0
    assert d.dominant_period is None


def test_linear_series():
    d = diagnose(series(-0.01 * T))
    assert d.linear_trend_slope == pytest.approx(-0.01, abs=1e-9)
    assert d.last_positive_step is None
    assert d.first_sign_change is None


def test_sign_history():
    x = np.array([0.5, 0.2, -0.1, 0.3, -0.4, -0.2])
    d = diagnose(series(x))
    assert d.first_sign_change == 3
    assert d.last_positive_step == 4
    assert d.first_sign_change <= d.last_positive_step


@pytest.mark.parametrize("period", [50.0, 125.0, 200.0])
def test_period_of_trend_plus_sine(period):
    x = -0.003 * T + 0.2 * np.sin(2 * np.pi * T / period)
    d = diagnose(series(x))
    assert d.dominant_period == pytest.approx(period, rel=0.02)


def test_period_ignores_fast_ripple():
    slow = 0.2 * np.sin(2 * np.pi * T / 160)
    ripple = 0.05 * np.cos(np.pi * T / 2)  # period 4
    d = diagnose(series(slow + ripple))
    assert d.dominant_period == pytest.approx(160, rel=0.02)
    assert d.short_period_variance > 1e-4
    # without smoothing the ripple adds extra crossings near each slow zero
    assert diagnose(series(slow + ripple), smooth=1).dominant_period < 80


def test_up_crossings_interpolated():
    t = np.array([0.0, 1.0, 2.0, 3.0])
    r = np.array([-1.0, 1.0, -1.0, 3.0])
    np.testing.assert_allclose(up_crossings(t, r), [0.5, 2.25])


def test_linear_trend_single_point():
    assert linear_trend([3.0], [2.0]) == (0.0, 2.0)


def test_negation_symmetry():
    x = 0.1 * np.sin(T / 20) - 0.001 * T + 0.05
    d = diagnose(series(x))
    dn = diagnose(series(-x))
    assert dn.first_sign_change == d.first_sign_change
    assert dn.linear_trend_slope == pytest.approx(-d.linear_trend_slope)


@pytest.mark.parametrize("bad", [np.empty((0, 2)), np.array([[1.0, 0.0], [1.0, 1.0]]), np.ones((3, 3))])
def test_invalid_series(bad):
    with pytest.raises(ValueError):
        diagnose(bad)


def test_compare_single_game_is_zero():
    s = expectation_series("A", (0.02, 0.4), 200)
    diff = compare_to_game_A(s, 0.02, 200)
    assert diff.shape == (200, 2)
    assert np.all(diff[:, 1] == 0)


def test_compare_length_mismatch():
    s = expectation_series("AB", (0.02, 0.4), 50)
    with pytest.raises(ValueError):
        compare_to_game_A(s, 0.02, 60)


def test_compare_antisymmetric():
    s = expectation_series("ABB", (0.005, 0.03), 300)
    sm = expectation_series("ABB", (-0.005, -0.03), 300)
    d = compare_to_game_A(s, 0.005, 300)
    dm = compare_to_game_A(sm, -0.005, 300)
    np.testing.assert_allclose(dm[:, 1], -d[:, 1], atol=1e-10)


def test_compare_period_two_schedule_vanishes():
    s = expectation_series("AB", (0.005, 0.03), 400)
    np.testing.assert_allclose(compare_to_game_A(s, 0.005, 400)[:, 1], 0, atol=1e-12)
