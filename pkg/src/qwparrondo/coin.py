"""
Two-level coin operators for the phase-biased walk.

Matrices act on chirality column vectors ordered (R, L): column 0 is the
input |R>, column 1 the input |L>. With this ordering a positive phase in
the symmetric coin pushes the walker towards negative x, and the general
coin's phase ``theta`` enters the dynamics only through ``theta + mu`` for
the general initial state (see :mod:`qwparrondo.state`).

At ``rho = 1/2`` and zero phase the symmetric coin sends
|L> -> (|L> + i|R>)/sqrt(2) and |R> -> (i|L> + |R>)/sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

__all__ = [
    "CHIRALITIES",
    "RIGHT",
    "LEFT",
    "CoinOperator",
    "PhasePair",
    "make_general_coin",
    "make_phase_coin",
    "game_coin",
]

RIGHT = 0
LEFT = 1
CHIRALITIES = ("R", "L")

UNITARY_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class CoinOperator:
    """Immutable 2x2 unitary acting on the chirality space.

    Raises ``ValueError`` on construction when the matrix is not 2x2 or is
    not unitary to within ``1e-12`` entrywise.
    """

    matrix: NDArray[np.complex128]

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128, copy=True)
        if m.shape != (2, 2):
            raise ValueError(f"coin must be 2x2, got shape {m.shape}")
        if not is_unitary(m):
            raise ValueError("coin matrix is not unitary")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoinOperator):
            return NotImplemented
        return bool(np.array_equal(self.matrix, other.matrix))

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())

    def __repr__(self) -> str:
        return f"CoinOperator({self.matrix.tolist()!r})"

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))

    def dagger(self) -> "CoinOperator":
        return CoinOperator(self.matrix.conj().T)


class PhasePair(NamedTuple):
    """Phases (radians) of game A and game B."""

    alpha: float
    beta: float

    def swapped(self) -> "PhasePair":
        return PhasePair(self.beta, self.alpha)

    def negated(self) -> "PhasePair":
        return PhasePair(-self.alpha, -self.beta)

    def in_canonical_range(self) -> bool:
        half_pi = np.pi / 2
        return all(-half_pi <= p <= half_pi for p in self)


def is_unitary(matrix: ArrayLike, atol: float = UNITARY_ATOL) -> bool:
    """Return True when ``U^dagger U = I`` and ``|det U| = 1`` within ``atol``."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    gram = m.conj().T @ m
    if not np.allclose(gram, np.eye(m.shape[0]), rtol=0.0, atol=atol):
        return False
    return abs(abs(np.linalg.det(m)) - 1.0) <= atol


def _check_rho(rho: float) -> float:
    rho = float(rho)
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho!r}")
    return rho


def make_general_coin(rho: float, theta: float, phi: float) -> CoinOperator:
    """
    Most general two-level coin up to an overall phase.

    Parameters
    ----------
    rho : float
        Probability weight in [0, 1]; 1/2 gives an unbiased split.
    theta, phi : float
        Phases in radians.

    Returns
    -------
    CoinOperator
        ``[[sqrt(rho), e^{i theta} sqrt(1-rho)],
        [e^{i phi} sqrt(1-rho), -e^{i(theta+phi)} sqrt(rho)]]``

    Raises
    ------
    ValueError
        If ``rho`` is outside [0, 1].
    """
    rho = _check_rho(rho)
    a = np.sqrt(rho)
    b = np.sqrt(1.0 - rho)
    m = np.array(
        [
            [a, np.exp(1j * theta) * b],
            [np.exp(1j * phi) * b, -np.exp(1j * (theta + phi)) * a],
        ],
        dtype=np.complex128,
    )
    return CoinOperator(m)


def make_phase_coin(rho: float, alpha: float) -> CoinOperator:
    """
    Symmetric coin with a diagonal bias phase.

    Returns ``[[e^{i alpha} sqrt(rho), i sqrt(1-rho)],
    [i sqrt(1-rho), e^{-i alpha} sqrt(rho)]]``. It equals
    ``e^{i alpha} * make_general_coin(rho, pi/2 - alpha, pi/2 - alpha)``.

    Raises
    ------
    ValueError
        If ``rho`` is outside [0, 1].
    """
    rho = _check_rho(rho)
    a = np.sqrt(rho)
    b = np.sqrt(1.0 - rho)
    m = np.array(
        [
            [np.exp(1j * alpha) * a, 1j * b],
            [1j * b, np.exp(-1j * alpha) * a],
        ],
        dtype=np.complex128,
    )
    return CoinOperator(m)


def game_coin(game: Literal["A", "B"], phases: PhasePair) -> CoinOperator:
    """Coin for game ``A`` (phase alpha) or ``B`` (phase beta), both at rho = 1/2."""
    if game == "A":
        return make_phase_coin(0.5, phases[0])
    if game == "B":
        return make_phase_coin(0.5, phases[1])
    raise ValueError(f"game must be 'A' or 'B', got {game!r}")
