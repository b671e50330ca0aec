import itertools

import numpy as np
import pytest

from qwparrondo.evolution import GameSequence, evolve
from qwparrondo.state import expectation_position, standard_initial_state
from qwparrondo.sweep import (
    SweepGrid,
    SweepResult,
    enumerate_sequences,
    parrondo_screen,
    positive_region,
    screen_steps,
    sweep,
)


def small_grid(seq="AB", steps=30, lo=0.0, hi=0.2, n=7):
    return SweepGrid(GameSequence(seq), steps, lo, hi, lo, hi, n, n)


def brute_force_classes(max_len):
    """Rotation classes of primitive words, all-B dropped, smallest member kept."""
    reps = set()
    for n in range(1, max_len + 1):
        for w in map("".join, itertools.product("AB", repeat=n)):
            root = next(w[:d] for d in range(1, n + 1) if n % d == 0 and w[:d] * (n // d) == w)
            if set(root) == {"B"}:
                continue
            reps.add(min(root[k:] + root[:k] for k in range(len(root))))
    return reps


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n_alpha=1),
        dict(n_beta=0),
        dict(alpha_min=0.2, alpha_max=0.2),
        dict(beta_min=0.3, beta_max=0.1),
        dict(steps=0),
    ],
)
def test_invalid_grid(kwargs):
    with pytest.raises(ValueError):
        SweepGrid(**kwargs)


def test_grid_axes():
    g = SweepGrid()
    assert g.alphas.size == 81 and g.alphas[0] == 0.0 and g.alphas[-1] == 0.2
    assert g.alphas[1] == pytest.approx(0.0025)


def test_diagonal_matches_single_game():
    grid = small_grid("ABB", 30)
    res = sweep(grid)
    for i, a in enumerate(grid.alphas):
        single = expectation_position(evolve(standard_initial_state(), "A", (a, a), 30))
        assert res.values[i, i] == pytest.approx(single, abs=1e-12)


def test_antisymmetric_grid():
    grid = SweepGrid(GameSequence("AB"), 100, -0.2, 0.2, -0.2, 0.2, 9, 9)
    v = sweep(grid).values
    np.testing.assert_allclose(v, -v[::-1, ::-1], rtol=0, atol=1e-10)


def test_deterministic_and_parallel_equivalent():
    grid = small_grid("AABB", 40, n=9)
    first = sweep(grid, workers=1).values
    assert np.array_equal(first, sweep(grid, workers=1).values)
    assert np.array_equal(first, sweep(grid, workers=3).values)


def test_bound_and_shape():
    grid = small_grid("ABBB", 12, -1.5, 1.5)
    res = sweep(grid)
    assert res.values.shape == (7, 7)
    assert np.all(np.abs(res.values) <= 12)


def test_result_validation():
    grid = small_grid(steps=5, n=2)
    with pytest.raises(ValueError, match="bound"):
        SweepResult(grid, np.full((2, 2), 6.0))
    with pytest.raises(ValueError, match="non-finite"):
        SweepResult(grid, np.full((2, 2), np.nan))
    with pytest.raises(ValueError, match="shape"):
        SweepResult(grid, np.zeros((3, 2)))


def test_positive_region_basics():
    grid = small_grid(steps=5, n=2)
    neg = SweepResult(grid, np.full((2, 2), -1.0))
    assert positive_region(neg) == []
    mixed = SweepResult(grid, np.array([[0.5, -1.0], [2.0, 0.25]]))
    assert positive_region(mixed, threshold=2.0) == []
    assert positive_region(mixed) == [(0.0, 0.0, 0.5), (0.2, 0.0, 2.0), (0.2, 0.2, 0.25)]
    assert positive_region(mixed, positive_phases=True) == [(0.2, 0.2, 0.25)]
    assert positive_region(mixed, threshold=0.3) == [(0.0, 0.0, 0.5), (0.2, 0.0, 2.0)]


def test_max_cell():
    grid = small_grid(steps=5, n=2)
    res = SweepResult(grid, np.array([[3.0, -1.0], [2.0, 0.25]]))
    assert res.max_cell() == (0.0, 0.0, 3.0)
    assert res.max_cell(positive_phases=True) == (0.2, 0.2, 0.25)


def test_enumerate_small():
    assert [s.letters for s in enumerate_sequences(1)] == ["A"]
    assert [s.letters for s in enumerate_sequences(2)] == ["A", "AB"]


def test_enumerate_four():
    got = [s.letters for s in enumerate_sequences(4)]
    assert got == ["A", "AB", "AAB", "ABB", "AAAB", "AABB", "ABBB"]


@pytest.mark.parametrize("n", range(1, 9))
def test_enumerate_against_brute_force(n):
    got = [s.letters for s in enumerate_sequences(n)]
    assert len(got) == len(set(got))
    assert set(got) == brute_force_classes(n)


@pytest.mark.parametrize("n", [0, 9])
def test_enumerate_range(n):
    with pytest.raises(ValueError):
        enumerate_sequences(n)


def test_screen_steps():
    assert screen_steps(GameSequence("AB")) == 100
    assert screen_steps(GameSequence("ABB")) == 99
    assert screen_steps(GameSequence("ABBB")) == 100
    assert screen_steps(GameSequence("AABBB"), 12) == 10
    with pytest.raises(ValueError):
        screen_steps(GameSequence("AABB"), 3)


def test_screen_small_grid():
    grid = SweepGrid(alpha_min=0.0, alpha_max=0.1, beta_min=0.0, beta_max=0.1, n_alpha=5, n_beta=5)
    report = parrondo_screen(2, grid, step_cap=30)
    assert list(report) == ["A", "AB"]
    a = report["A"]
    assert a.steps == 30 and not a.has_positive and a.max_exp_x < 0
    assert a.alpha_at_max > 0 and a.beta_at_max > 0
    # period-2 schedules reduce to game A at alpha, hence never win here
    assert not report["AB"].has_positive
