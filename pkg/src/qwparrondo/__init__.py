"""Discrete-time quantum walks with phase-biased coins and periodic A/B game schedules."""

from .coin import (
    CoinOperator,
    PhasePair,
    game_coin,
    make_general_coin,
    make_phase_coin,
)
from .state import (
    InitialStateSpec,
    WalkerState,
    expectation_position,
    general_initial_state,
    position_distribution,
    standard_initial_state,
)
from .evolution import (
    GameSequence,
    batch_expectation,
    dense_oracle_evolve,
    evolve,
    expectation_series,
    run_coins,
    step,
)
from .sweep import (
    ScreenEntry,
    SweepGrid,
    SweepResult,
    enumerate_sequences,
    parrondo_screen,
    positive_region,
    sweep,
)
from .analysis import SeriesDiagnostics, compare_to_game_A, diagnose

__version__ = "0.1.0"
