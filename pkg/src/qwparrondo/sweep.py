"""
Phase-grid sweeps, positive-region extraction and the sequence screen.

Each grid row (fixed alpha, all betas) is one independent task. Rows are
always computed the same way whatever the worker count, so serial and
parallel sweeps agree bit for bit.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from .evolution import GameSequence, batch_expectation

__all__ = [
    "SweepGrid",
    "SweepResult",
    "ScreenEntry",
    "sweep",
    "positive_region",
    "enumerate_sequences",
    "screen_steps",
    "parrondo_screen",
    "DEFAULT_STEP_CAP",
]

DEFAULT_STEP_CAP = 100


@dataclass(frozen=True)
class SweepGrid:
    """Uniform inclusive grid over (alpha, beta) for one sequence and step count."""

    sequence: GameSequence = field(default_factory=lambda: GameSequence("AB"))
    steps: int = DEFAULT_STEP_CAP
    alpha_min: float = 0.0
    alpha_max: float = 0.2
    beta_min: float = 0.0
    beta_max: float = 0.2
    n_alpha: int = 81
    n_beta: int = 81

    def __post_init__(self) -> None:
        if not isinstance(self.sequence, GameSequence):
            object.__setattr__(self, "sequence", GameSequence(self.sequence))
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.n_alpha < 2 or self.n_beta < 2:
            raise ValueError(f"grid needs at least 2 points per axis, got {self.n_alpha}x{self.n_beta}")
        if not self.alpha_min < self.alpha_max:
            raise ValueError(f"alpha range is empty: [{self.alpha_min}, {self.alpha_max}]")
        if not self.beta_min < self.beta_max:
            raise ValueError(f"beta range is empty: [{self.beta_min}, {self.beta_max}]")

    @property
    def alphas(self) -> NDArray[np.float64]:
        return np.linspace(self.alpha_min, self.alpha_max, self.n_alpha)

    @property
    def betas(self) -> NDArray[np.float64]:
        return np.linspace(self.beta_min, self.beta_max, self.n_beta)

    def with_sequence(self, sequence: GameSequence | str, steps: int) -> "SweepGrid":
        return replace(self, sequence=GameSequence(str(sequence)), steps=steps)


@dataclass(frozen=True, eq=False)
class SweepResult:
    """<x> on every grid cell; ``values[i, j]`` belongs to ``(alphas[i], betas[j])``."""

    grid: SweepGrid
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=float, copy=True)
        if v.shape != (self.grid.n_alpha, self.grid.n_beta):
            raise ValueError(f"values shape {v.shape} does not match grid")
        if not np.all(np.isfinite(v)):
            raise ValueError("sweep produced non-finite values")
        # walker cannot be farther than `steps` from the origin; allow rounding slack
        if np.any(np.abs(v) > self.grid.steps * (1 + 1e-12)):
            raise ValueError("sweep value exceeds the light-cone bound |<x>| <= steps")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def cells(self):
        """Yield ``(alpha, beta, value)`` in row-major order (alpha outer)."""
        for i, a in enumerate(self.grid.alphas):
            for j, b in enumerate(self.grid.betas):
                yield float(a), float(b), float(self.values[i, j])

    def max_cell(self, positive_phases: bool = False) -> tuple[float, float, float] | None:
        """Largest cell, optionally only among cells with alpha > 0 and beta > 0."""
        v = self.values
        if positive_phases:
            mask = (self.grid.alphas[:, None] > 0) & (self.grid.betas[None, :] > 0)
            if not mask.any():
                return None
            v = np.where(mask, v, -np.inf)
        i, j = np.unravel_index(np.argmax(v), v.shape)
        return float(self.grid.alphas[i]), float(self.grid.betas[j]), float(self.values[i, j])


def _row(args: tuple[str, float, NDArray[np.float64], int]) -> NDArray[np.float64]:
    letters, alpha, betas, steps = args
    return batch_expectation(letters, alpha, betas, steps)


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        return os.cpu_count() or 1
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    return workers


def sweep(grid: SweepGrid, workers: int | None = 1) -> SweepResult:
    """
    Evaluate <x> after ``grid.steps`` steps on every grid cell.

    Parameters
    ----------
    grid : SweepGrid
        Phase ranges, sequence and step count.
    workers : int or None
        Process count; ``None`` uses every available CPU and ``1`` runs inline.
    """
    workers = _resolve_workers(workers)
    betas = grid.betas
    tasks = [(grid.sequence.letters, float(a), betas, grid.steps) for a in grid.alphas]
    values = np.empty((grid.n_alpha, grid.n_beta))
    if workers == 1:
        for i, task in enumerate(tasks):
            values[i] = _row(task)
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            for i, row in enumerate(pool.map(_row, tasks)):
                values[i] = row
    return SweepResult(grid, values)


def positive_region(
    result: SweepResult,
    threshold: float = 0.0,
    positive_phases: bool = False,
) -> list[tuple[float, float, float]]:
    """Cells with <x> strictly above ``threshold``, sorted by alpha then beta."""
    out = []
    for a, b, v in result.cells():
        if positive_phases and not (a > 0 and b > 0):
            continue
        if v > threshold:
            out.append((a, b, v))
    return out


def _is_canonical(word: str) -> bool:
    # primitive and strictly smaller than each of its proper rotations
    return all(word < word[k:] + word[:k] for k in range(1, len(word)))


def enumerate_sequences(max_len: int) -> list[GameSequence]:
    """
    Canonical periodic schedules of period at most ``max_len``.

    A schedule is identified with its primitive period (ABAB is AB) and with
    its rotations, and is represented by the lexicographically smallest
    rotation. The all-B schedule is dropped since it is game A with the
    phases relabelled. Ordered by period, then alphabetically.
    """
    if not 1 <= max_len <= 8:
        raise ValueError(f"max_len must lie in [1, 8], got {max_len}")
    words = []
    for n in range(1, max_len + 1):
        for letters in itertools.product("AB", repeat=n):
            w = "".join(letters)
            if w != "B" and _is_canonical(w):
                words.append(GameSequence(w))
    return words


def screen_steps(sequence: GameSequence, cap: int = DEFAULT_STEP_CAP) -> int:
    """Largest whole number of periods that fits in ``cap`` steps (99 for ABB at cap 100)."""
    n = (cap // sequence.period) * sequence.period
    if n < 1:
        raise ValueError(f"step cap {cap} is shorter than one period of {sequence}")
    return n


class ScreenEntry(NamedTuple):
    sequence: str
    steps: int
    has_positive: bool
    max_exp_x: float
    alpha_at_max: float
    beta_at_max: float


def parrondo_screen(
    max_len: int = 4,
    grid: SweepGrid | None = None,
    step_cap: int = DEFAULT_STEP_CAP,
    workers: int | None = 1,
) -> dict[str, ScreenEntry]:
    """
    Sweep every canonical sequence and flag those with a winning cell.

    Only cells with alpha > 0 and beta > 0 count, since both games must
    lose on their own. ``grid`` supplies the phase ranges; its sequence and
    step count are replaced per sequence.
    """
    grid = SweepGrid() if grid is None else grid
    report = {}
    for seq in enumerate_sequences(max_len):
        n = screen_steps(seq, step_cap)
        result = sweep(grid.with_sequence(seq, n), workers=workers)
        best = result.max_cell(positive_phases=True)
        if best is None:
            raise ValueError("grid has no cell with alpha > 0 and beta > 0")
        a, b, v = best
        report[seq.letters] = ScreenEntry(seq.letters, n, v > 0.0, v, a, b)
    return report
