"""Diagnostics for long <x>(t) series: trend, sign history and oscillation period."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .evolution import expectation_series

__all__ = [
    "SeriesDiagnostics",
    "diagnose",
    "compare_to_game_A",
    "linear_trend",
    "up_crossings",
]

# multiple of every schedule period up to 4, so the moving average cancels
# the per-period ripple exactly
SMOOTH_WINDOW = 12


@dataclass(frozen=True)
class SeriesDiagnostics:
    first_sign_change: int | None
    last_positive_step: int | None
    linear_trend_slope: float
    dominant_period: float | None
    # variance left after removing the trend and the smoothed long oscillation
    short_period_variance: float


def _as_series(series: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    arr = np.asarray(series, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"series must have shape (n, 2), got {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError("series is empty")
    t, x = arr[:, 0], arr[:, 1]
    if np.any(np.diff(t) <= 0):
        raise ValueError("series times must be strictly increasing")
    return t, x


def linear_trend(t: ArrayLike, x: ArrayLike) -> tuple[float, float]:
    """Ordinary least-squares ``(slope, intercept)``; slope is 0 for a single point."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    tm = t.mean()
    xm = x.mean()
    dt = t - tm
    denom = np.sum(dt * dt)
    slope = float(np.sum(dt * (x - xm)) / denom) if denom > 0 else 0.0
    return slope, float(xm - slope * tm)


def up_crossings(t: ArrayLike, r: ArrayLike) -> NDArray[np.float64]:
    """Linearly interpolated times where ``r`` passes from negative to non-negative."""
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    i = np.nonzero((r[:-1] < 0) & (r[1:] >= 0))[0]
    return t[i] - r[i] * (t[i + 1] - t[i]) / (r[i + 1] - r[i])


def _moving_average(r: NDArray[np.float64], window: int) -> NDArray[np.float64]:
    if window <= 1 or r.size < window:
        return r.copy()
    kernel = np.ones(window) / window
    # reflect at the ends so the smoothed curve keeps the series length
    pad = window // 2
    padded = np.pad(r, (pad, window - 1 - pad), mode="reflect")
    return np.convolve(padded, kernel, mode="valid")


def diagnose(series: ArrayLike, smooth: int = SMOOTH_WINDOW) -> SeriesDiagnostics:
    """
    Summarise an ``(n, 2)`` array of ``(t, <x>)`` rows.

    The dominant period is the mean spacing of up-crossings of the
    detrended series after a centred moving average of width ``smooth``
    (``smooth=1`` disables smoothing). The moving average suppresses the
    fast, low-amplitude ripple so it does not add spurious crossings.

    Raises
    ------
    ValueError
        If the series is empty or its times are not strictly increasing.
    """
    t, x = _as_series(series)

    sign0 = np.sign(x[0])
    changed = np.nonzero(np.sign(x) != sign0)[0]
    first_change = int(t[changed[0]]) if changed.size else None

    positive = np.nonzero(x > 0)[0]
    last_positive = int(t[positive[-1]]) if positive.size else None

    slope, intercept = linear_trend(t, x)
    resid = x - (intercept + slope * t)
    smoothed = _moving_average(resid, smooth)
    crossings = up_crossings(t, smoothed)
    period = float(np.mean(np.diff(crossings))) if crossings.size >= 2 else None
    ripple = float(np.var(resid - smoothed))

    return SeriesDiagnostics(first_change, last_positive, slope, period, ripple)


def compare_to_game_A(series: ArrayLike, alpha: float, t_max: int) -> NDArray[np.float64]:
    """
    Pointwise difference between ``series`` and game A alone at phase ``alpha``.

    ``series`` must hold exactly the steps ``1 .. t_max``. Returns rows of
    ``(t, <x>_series - <x>_A)``.
    """
    t, x = _as_series(series)
    if t.size != t_max or not np.array_equal(t, np.arange(1, t_max + 1)):
        raise ValueError(f"series must cover t = 1..{t_max}, got {t.size} rows")
    baseline = expectation_series("A", (alpha, alpha), t_max)
    return np.column_stack([t, x - baseline[:, 1]])
