"""
Walker state on the unbounded line, stored densely over the reachable support.

Amplitudes live in a ``(2, n)`` complex array. Row 0 holds the R component,
row 1 the L component, matching the coin basis in :mod:`qwparrondo.coin`.
Column ``j`` corresponds to position ``x_min + j``; freshly evolved states
use ``x_min = -t`` so the array covers ``[-t, t]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .coin import LEFT, RIGHT

__all__ = [
    "WalkerState",
    "InitialStateSpec",
    "standard_initial_state",
    "general_initial_state",
    "position_distribution",
    "expectation_position",
    "probabilities",
]

NORM_ATOL = 1e-10
PROB_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class WalkerState:
    """Pure state of the walker at step ``t``.

    The amplitude array is copied and frozen on construction. A state whose
    squared norm differs from one by more than ``1e-10`` is rejected.
    """

    t: int
    amplitudes: NDArray[np.complex128]
    x_min: int | None = None

    def __post_init__(self) -> None:
        if int(self.t) != self.t or self.t < 0:
            raise ValueError(f"t must be a non-negative integer, got {self.t!r}")
        amps = np.array(self.amplitudes, dtype=np.complex128, copy=True)
        if amps.ndim != 2 or amps.shape[0] != 2 or amps.shape[1] == 0:
            raise ValueError(f"amplitudes must have shape (2, n), got {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "t", int(self.t))
        object.__setattr__(self, "amplitudes", amps)
        if self.x_min is None:
            object.__setattr__(self, "x_min", -self.t)
        norm = self.norm()
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalised (norm^2 = {norm!r})")

    @property
    def positions(self) -> NDArray[np.int64]:
        return np.arange(self.x_min, self.x_min + self.amplitudes.shape[1])

    @property
    def right(self) -> NDArray[np.complex128]:
        return self.amplitudes[RIGHT]

    @property
    def left(self) -> NDArray[np.complex128]:
        return self.amplitudes[LEFT]

    def amplitude(self, x: int, chirality: str) -> complex:
        """Amplitude at position ``x`` for chirality ``'R'`` or ``'L'``; zero off the stored span."""
        row = {"R": RIGHT, "L": LEFT}[chirality]
        j = x - self.x_min
        if 0 <= j < self.amplitudes.shape[1]:
            return complex(self.amplitudes[row, j])
        return 0j

    def norm(self) -> float:
        """Squared norm, sum over x of |a_R|^2 + |a_L|^2."""
        return float(np.sum(probabilities(self.amplitudes)))

    def scaled(self, phase: complex) -> "WalkerState":
        """Copy of the state multiplied by a unit-modulus scalar."""
        return WalkerState(self.t, self.amplitudes * phase, self.x_min)

    def support_violations(self) -> NDArray[np.int64]:
        """Positions carrying nonzero amplitude outside ``|x| <= t`` with ``x = t (mod 2)``."""
        x = self.positions
        bad = (np.abs(x) > self.t) | ((x - self.t) % 2 != 0)
        nonzero = np.any(self.amplitudes != 0, axis=0)
        return x[bad & nonzero]


@dataclass(frozen=True)
class InitialStateSpec:
    """Weight ``eta`` on |R> and relative phase ``mu`` on |L>."""

    eta: float
    mu: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {self.eta!r}")


def standard_initial_state() -> WalkerState:
    """(|0,L> - |0,R>)/sqrt(2)."""
    amps = np.zeros((2, 1), dtype=np.complex128)
    amps[LEFT, 0] = 1.0 / np.sqrt(2.0)
    amps[RIGHT, 0] = -1.0 / np.sqrt(2.0)
    return WalkerState(0, amps)


def general_initial_state(spec: InitialStateSpec) -> WalkerState:
    """(sqrt(eta)|R> + e^{i mu} sqrt(1-eta)|L>) at the origin."""
    amps = np.zeros((2, 1), dtype=np.complex128)
    amps[RIGHT, 0] = np.sqrt(spec.eta)
    amps[LEFT, 0] = np.exp(1j * spec.mu) * np.sqrt(1.0 - spec.eta)
    return WalkerState(0, amps)


def probabilities(amplitudes: ArrayLike) -> NDArray[np.float64]:
    """Per-site probability |a_R|^2 + |a_L|^2 along the last axis.

    Accepts ``(2, n)`` or batched ``(..., 2, n)`` arrays.
    """
    a = np.asarray(amplitudes)
    r = a[..., RIGHT, :]
    l = a[..., LEFT, :]
    # grouped per chirality so a global factor of +-i (which swaps re/im) is exact
    return (r.real**2 + r.imag**2) + (l.real**2 + l.imag**2)


def position_distribution(state: WalkerState) -> dict[int, float]:
    """Map ``x -> P(x)``; sites with ``P(x) < 1e-300`` are omitted."""
    p = probabilities(state.amplitudes)
    return {int(x): float(px) for x, px in zip(state.positions, p) if px >= PROB_FLOOR}


def expectation_position(state: WalkerState) -> float:
    """Mean walker position, sum over x of x * P(x)."""
    p = probabilities(state.amplitudes)
    return float(np.sum(p * state.positions))
