"""
Coin-then-shift evolution of the walker under periodic game schedules.

One letter of a :class:`GameSequence` is one time step. At step ``k`` the coin
of game ``letters[k % period]`` is applied at every site, then R amplitudes
move to ``x + 1`` and L amplitudes to ``x - 1``.

The fast path works on a fixed frame wide enough for the whole run and can
carry a batch of independent walkers (one per phase pair) in leading axes.
:func:`dense_oracle_evolve` rebuilds the same dynamics from explicit
full-space matrices for cross-checking on small instances.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .coin import LEFT, RIGHT, CoinOperator, PhasePair, game_coin, make_phase_coin
from .state import (
    InitialStateSpec,
    WalkerState,
    general_initial_state,
    probabilities,
    standard_initial_state,
)

__all__ = [
    "GameSequence",
    "step",
    "evolve",
    "run_coins",
    "expectation_series",
    "batch_expectation",
    "dense_oracle_evolve",
    "oracle_step_matrix",
    "ORACLE_MAX_STEPS",
]

ORACLE_MAX_STEPS = 12


@dataclass(frozen=True)
class GameSequence:
    """Periodic schedule of games over the alphabet {A, B}."""

    letters: str

    def __post_init__(self) -> None:
        letters = str(self.letters).upper()
        if not letters:
            raise ValueError("game sequence must be nonempty")
        bad = sorted(set(letters) - {"A", "B"})
        if bad:
            raise ValueError(
                f"invalid letter {bad[0]!r} in game sequence {self.letters!r}; only A and B are allowed"
            )
        object.__setattr__(self, "letters", letters)

    def __str__(self) -> str:
        return self.letters

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def period(self) -> int:
        return len(self.letters)

    def letter_at(self, k: int) -> str:
        return self.letters[k % len(self.letters)]

    def swapped(self) -> "GameSequence":
        """Same schedule with the roles of A and B exchanged."""
        return GameSequence(self.letters.translate(str.maketrans("AB", "BA")))

    def primitive(self) -> "GameSequence":
        """Shortest word whose repetition gives the same infinite schedule (ABAB -> AB)."""
        s = self.letters
        n = len(s)
        for d in range(1, n + 1):
            if n % d == 0 and s[:d] * (n // d) == s:
                return GameSequence(s[:d])
        return self  # unreachable

    def repetitions(self, steps: int) -> float:
        return steps / self.period


def _as_sequence(sequence: GameSequence | str) -> GameSequence:
    return sequence if isinstance(sequence, GameSequence) else GameSequence(sequence)


def _as_coin(coin: CoinOperator | ArrayLike) -> CoinOperator:
    # CoinOperator() re-validates unitarity and raises ValueError otherwise
    return coin if isinstance(coin, CoinOperator) else CoinOperator(np.asarray(coin))


def _step_frame(amps: NDArray[np.complex128], u: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """One coin + shift on a fixed frame.

    ``amps`` has shape ``(..., 2, n)``, ``u`` shape ``(..., 2, 2)``. Amplitude
    pushed past either edge of the frame is dropped, so callers size the frame
    to cover the reachable support.
    """
    u = u[..., None]
    r = amps[..., RIGHT, :]
    l = amps[..., LEFT, :]
    new_r = u[..., 0, 0, :] * r + u[..., 0, 1, :] * l
    new_l = u[..., 1, 0, :] * r + u[..., 1, 1, :] * l
    out = np.zeros_like(amps)
    out[..., RIGHT, 1:] = new_r[..., :-1]
    out[..., LEFT, :-1] = new_l[..., 1:]
    return out


def _framed(state: WalkerState, pad: int) -> NDArray[np.complex128]:
    n = state.amplitudes.shape[1]
    frame = np.zeros((2, n + 2 * pad), dtype=np.complex128)
    frame[:, pad : pad + n] = state.amplitudes
    return frame


def step(state: WalkerState, coin: CoinOperator | ArrayLike) -> WalkerState:
    """
    Apply the coin at every site, then shift R right and L left.

    Raises
    ------
    ValueError
        If ``coin`` is not a 2x2 unitary.
    """
    coin = _as_coin(coin)
    out = _step_frame(_framed(state, 1), coin.matrix)
    return WalkerState(state.t + 1, out, state.x_min - 1)


def _sequence_coins(sequence: GameSequence, phases: PhasePair) -> list[CoinOperator]:
    table = {g: game_coin(g, phases) for g in "AB"}
    return [table[c] for c in sequence.letters]


def evolve(
    state: WalkerState,
    sequence: GameSequence | str,
    phases: PhasePair | tuple[float, float],
    steps: int,
) -> WalkerState:
    """
    Play ``steps`` rounds of the periodic schedule starting from ``state``.

    The first step of this call uses ``sequence.letters[0]``.

    Raises
    ------
    ValueError
        If ``steps < 1``.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    sequence = _as_sequence(sequence)
    return run_coins(state, _sequence_coins(sequence, PhasePair(*phases)), steps)


def run_coins(
    state: WalkerState,
    coins: Sequence[CoinOperator | ArrayLike] | CoinOperator,
    steps: int,
) -> WalkerState:
    """Apply ``steps`` steps, cycling through ``coins`` (a single coin is used every step)."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if isinstance(coins, CoinOperator):
        coins = [coins]
    mats = [_as_coin(c).matrix for c in coins]
    amps = _framed(state, steps)
    for k in range(steps):
        amps = _step_frame(amps, mats[k % len(mats)])
    return WalkerState(state.t + steps, amps, state.x_min - steps)


def expectation_series(
    sequence: GameSequence | str,
    phases: PhasePair | tuple[float, float],
    t_max: int,
    initial: WalkerState | None = None,
) -> NDArray[np.float64]:
    """
    Mean position after each of the first ``t_max`` steps.

    Returns
    -------
    ndarray, shape (t_max, 2)
        Column 0 is ``t = 1 .. t_max``, column 1 is <x> at that step.
    """
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max}")
    sequence = _as_sequence(sequence)
    state = standard_initial_state() if initial is None else initial
    coins = [c.matrix for c in _sequence_coins(sequence, PhasePair(*phases))]
    amps = _framed(state, t_max)
    x = np.arange(state.x_min - t_max, state.x_min - t_max + amps.shape[1])
    out = np.empty((t_max, 2))
    for k in range(t_max):
        amps = _step_frame(amps, coins[k % len(coins)])
        out[k, 0] = k + 1
        out[k, 1] = np.sum(probabilities(amps) * x)
    return out


def batch_expectation(
    sequence: GameSequence | str,
    alphas: ArrayLike,
    betas: ArrayLike,
    steps: int,
) -> NDArray[np.float64]:
    """
    <x> after ``steps`` steps from the standard initial state, for many phase pairs at once.

    ``alphas`` and ``betas`` are broadcast together; the result has their
    broadcast shape. Each walker is computed independently of the others.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    sequence = _as_sequence(sequence)
    a, b = np.broadcast_arrays(np.asarray(alphas, dtype=float), np.asarray(betas, dtype=float))
    shape = a.shape
    a = a.ravel()
    b = b.ravel()
    s = np.sqrt(0.5)

    def coins(phase: NDArray[np.float64]) -> NDArray[np.complex128]:
        u = np.empty((phase.size, 2, 2), dtype=np.complex128)
        u[:, 0, 0] = np.exp(1j * phase) * s
        u[:, 0, 1] = 1j * s
        u[:, 1, 0] = 1j * s
        u[:, 1, 1] = np.exp(-1j * phase) * s
        return u

    table = {"A": coins(a), "B": coins(b)}
    amps = np.zeros((a.size, 2, 2 * steps + 1), dtype=np.complex128)
    amps[:, :, steps] = standard_initial_state().amplitudes[:, 0]
    for k in range(steps):
        amps = _step_frame(amps, table[sequence.letter_at(k)])
    x = np.arange(-steps, steps + 1)
    return np.sum(probabilities(amps) * x, axis=-1).reshape(shape)


# --- dense-matrix oracle -------------------------------------------------
# Kept free of the frame kernel above: explicit basis indexing, explicit
# permutation matrices, full matrix products.


def _oracle_index(x: int, chirality: int, span: int) -> int:
    return 2 * (x + span) + chirality


def oracle_step_matrix(coin: CoinOperator | ArrayLike, span: int) -> NDArray[np.complex128]:
    """
    Full step unitary on the ring of sites ``[-span, span]``.

    Basis vector ``2 * (x + span) + c`` is ``|x, c>`` with ``c = 0`` for R and
    ``c = 1`` for L. The shift wraps around the ring so the matrix is exactly
    unitary; walks of at most ``span`` steps from the origin never wrap.
    """
    u = np.asarray(coin, dtype=np.complex128)
    sites = 2 * span + 1
    dim = 2 * sites
    coin_full = np.kron(np.eye(sites), u)
    shift = np.zeros((dim, dim), dtype=np.complex128)
    for x in range(-span, span + 1):
        right_to = (x + 1 + span) % sites - span
        left_to = (x - 1 + span) % sites - span
        shift[_oracle_index(right_to, 0, span), _oracle_index(x, 0, span)] = 1.0
        shift[_oracle_index(left_to, 1, span), _oracle_index(x, 1, span)] = 1.0
    return shift @ coin_full


def dense_oracle_evolve(
    spec: InitialStateSpec | None,
    sequence: GameSequence | str,
    phases: PhasePair | tuple[float, float],
    steps: int,
) -> WalkerState:
    """
    Reference evolution from explicit full-space matrices.

    ``spec=None`` selects the standard initial state. Refuses ``steps`` above
    ``ORACLE_MAX_STEPS``; ``steps == 0`` returns the initial state.
    """
    if not 0 <= steps <= ORACLE_MAX_STEPS:
        raise ValueError(f"oracle handles 0 <= steps <= {ORACLE_MAX_STEPS}, got {steps}")
    sequence = _as_sequence(sequence)
    phases = PhasePair(*phases)
    init = standard_initial_state() if spec is None else general_initial_state(spec)
    if steps == 0:
        return init

    span = steps
    dim = 2 * (2 * span + 1)
    psi = np.zeros(dim, dtype=np.complex128)
    psi[_oracle_index(0, 0, span)] = init.amplitude(0, "R")
    psi[_oracle_index(0, 1, span)] = init.amplitude(0, "L")

    total = np.eye(dim, dtype=np.complex128)
    for k in range(steps):
        g = sequence.letter_at(k)
        alpha = phases.alpha if g == "A" else phases.beta
        total = oracle_step_matrix(make_phase_coin(0.5, alpha), span) @ total
    psi = total @ psi

    amps = np.empty((2, 2 * span + 1), dtype=np.complex128)
    for x in range(-span, span + 1):
        amps[RIGHT, x + span] = psi[_oracle_index(x, 0, span)]
        amps[LEFT, x + span] = psi[_oracle_index(x, 1, span)]
    return WalkerState(steps, amps, -span)
