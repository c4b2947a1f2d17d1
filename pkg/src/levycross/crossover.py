"""Aggregation-level sweeps and detection of the transition to Gaussian.

A heavy-tailed but truncated return series behaves like a stable law at
short aggregation and like a Gaussian at long aggregation.  This module
sweeps levels, fits each aggregated series, tracks the fitted stability
index and the excess kurtosis, and reports the smallest level from
which either signature of Gaussianity holds persistently:

* the fitted index stays at or above ``alpha_threshold`` (default 1.99)
  at every larger swept level, or
* the excess kurtosis stays at or below ``kurtosis_fraction`` (default
  5%) of its level-1 value at every larger swept level.

Persistence matters because convergence is slow and non-uniform: a
single touch of the threshold followed by a dip must not count.  The
smaller of the two firing levels wins, and the report names the rule
that fired.  Level counts convert to wall-clock time through the mean
spacing of the underlying fluctuations and a configurable trading-day
length.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError, LevycrossError, NoCrossoverError
from .fitting import FitResult, fit_and_test
from .returns import (
    TRADING_DAY_SECONDS,
    ReturnSeries,
    convolve_returns,
    series_stats,
)
from .stable import StableParams, sample as stable_sample
from .tlf import hard_truncate

__all__ = [
    "DEFAULT_TABLE_LEVELS",
    "DEFAULT_DENSE_LEVELS",
    "DEFAULT_CROSSOVER_LEVELS",
    "CrossoverConfig",
    "AlphaTrajectory",
    "CrossoverReport",
    "alpha_trajectory",
    "kurtosis_trajectory",
    "detect_crossover",
    "truncation_experiment",
]

log = logging.getLogger(__name__)

# Sparse sweep mirroring the reference report table layout.
DEFAULT_TABLE_LEVELS = tuple([1] + list(range(10, 160, 10)) + [1200, 2500, 2700])
# Dense sweep for locating the crossover.
DEFAULT_DENSE_LEVELS = tuple(range(100, 3100, 100))
DEFAULT_CROSSOVER_LEVELS = tuple(sorted(set(DEFAULT_TABLE_LEVELS) | set(DEFAULT_DENSE_LEVELS)))

_MIN_FIT_POINTS = 100


@dataclass(frozen=True)
class CrossoverConfig:
    alpha_threshold: float = 1.99
    kurtosis_fraction: float = 0.05
    min_points: int = _MIN_FIT_POINTS
    trading_day_seconds: float = TRADING_DAY_SECONDS

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha_threshold <= 2.0:
            raise InvalidParameterError(f"alpha_threshold must be in (0, 2], got {self.alpha_threshold}")
        if not 0.0 < self.kurtosis_fraction < 1.0:
            raise InvalidParameterError(
                f"kurtosis_fraction must be in (0, 1), got {self.kurtosis_fraction}"
            )
        if self.min_points < 4:
            raise InvalidParameterError(f"min_points must be >= 4, got {self.min_points}")
        if not self.trading_day_seconds > 0.0:
            raise InvalidParameterError("trading_day_seconds must be positive")


@dataclass(frozen=True)
class AlphaTrajectory:
    """Fit results indexed by strictly increasing aggregation level."""

    points: tuple
    source_label: str = ""
    mean_dt: float | None = None

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise InvalidParameterError("a trajectory needs at least one point")
        levels = [p[0] for p in pts]
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise InvalidParameterError("aggregation levels must be strictly increasing")
        for lvl, fit in pts:
            if lvl < 1 or not isinstance(fit, FitResult):
                raise InvalidParameterError("points must pair levels >= 1 with fit results")

    @property
    def levels(self) -> list:
        return [lvl for lvl, _ in self.points]

    @property
    def alphas(self) -> list:
        return [fit.params.alpha for _, fit in self.points]


@dataclass(frozen=True)
class CrossoverReport:
    n_c: int
    crossover_seconds: float
    crossover_trading_days: float
    criterion: str
    kurtosis_points: tuple = field(default_factory=tuple)


def _usable_levels(series: ReturnSeries, levels, min_points: int) -> list:
    if series.n_conv != 1:
        raise InvalidParameterError("sweeps start from a level-1 series")
    levels = [int(l) for l in levels]
    if not levels:
        raise InvalidParameterError("levels must be non-empty")
    if sorted(set(levels)) != levels:
        raise InvalidParameterError("levels must be strictly increasing")
    if levels[0] < 1:
        raise InvalidParameterError("levels must be >= 1")
    usable = []
    for lvl in levels:
        if len(series) // lvl < min_points:
            log.warning(
                "skipping level %d: only %d aggregated points (< %d)",
                lvl, len(series) // lvl, min_points,
            )
            continue
        usable.append(lvl)
    if not usable:
        raise InvalidParameterError(
            f"no level leaves at least {min_points} aggregated points "
            f"(series length {len(series)})"
        )
    return usable


def alpha_trajectory(
    series: ReturnSeries,
    levels,
    *,
    min_points: int = _MIN_FIT_POINTS,
    source_label: str = "",
) -> AlphaTrajectory:
    """Fit a stable law to the series aggregated at each level.

    Levels leaving fewer than ``min_points`` aggregated observations are
    skipped with a warning; if every level is skipped this raises.
    """
    points = []
    for lvl in _usable_levels(series, levels, min_points):
        agg = convolve_returns(series, lvl)
        points.append((lvl, fit_and_test(agg.values, n_conv=lvl)))
    return AlphaTrajectory(points=tuple(points), source_label=source_label, mean_dt=series.mean_dt)


def kurtosis_trajectory(
    series: ReturnSeries,
    levels,
    *,
    min_points: int = _MIN_FIT_POINTS,
) -> list:
    """Excess kurtosis of the aggregated series at each usable level."""
    out = []
    for lvl in _usable_levels(series, levels, min_points):
        agg = convolve_returns(series, lvl)
        out.append((lvl, series_stats(agg).excess_kurtosis))
    return out


def _first_persistent(levels, flags) -> int | None:
    """Smallest level from which the flag holds at every larger level."""
    best = None
    for lvl, ok in zip(reversed(levels), reversed(flags)):
        if not ok:
            break
        best = lvl
    return best


def detect_crossover(
    alpha_traj: AlphaTrajectory,
    kurt_points,
    config: CrossoverConfig = CrossoverConfig(),
    *,
    mean_dt: float | None = None,
) -> CrossoverReport:
    """Locate the smallest persistently Gaussian aggregation level.

    Raises NoCrossoverError (carrying the trajectory) when neither
    criterion holds even at the largest swept level.
    """
    kurt_points = tuple((int(l), float(k)) for l, k in kurt_points)

    levels = alpha_traj.levels
    alpha_flags = [a >= config.alpha_threshold for a in alpha_traj.alphas]
    n_alpha = _first_persistent(levels, alpha_flags)

    n_kurt = None
    if kurt_points:
        k_levels = [l for l, _ in kurt_points]
        k_ref = kurt_points[0][1]
        if k_ref > 0.0:
            thresh = config.kurtosis_fraction * k_ref
            k_flags = [k <= thresh for _, k in kurt_points]
            n_kurt = _first_persistent(k_levels, k_flags)

    candidates = [c for c in (n_alpha, n_kurt) if c is not None]
    if not candidates:
        raise NoCrossoverError(
            f"neither criterion held at the largest swept level "
            f"(alpha threshold {config.alpha_threshold}, "
            f"kurtosis fraction {config.kurtosis_fraction})",
            trajectory=alpha_traj,
        )
    n_c = min(candidates)
    if n_alpha is not None and n_kurt is not None and n_alpha == n_kurt:
        criterion = "alpha and kurtosis criteria fired together"
    elif n_c == n_alpha:
        criterion = f"fitted alpha >= {config.alpha_threshold} persistently"
    else:
        criterion = (
            f"excess kurtosis <= {config.kurtosis_fraction:.0%} of its level-1 value persistently"
        )

    dt = mean_dt if mean_dt is not None else alpha_traj.mean_dt
    seconds = n_c * dt if dt is not None else math.nan
    return CrossoverReport(
        n_c=int(n_c),
        crossover_seconds=seconds,
        crossover_trading_days=seconds / config.trading_day_seconds,
        criterion=criterion,
        kurtosis_points=kurt_points,
    )


def truncation_experiment(
    gen: StableParams,
    lengths,
    n_std: float,
    levels,
    seed,
    *,
    min_points: int = _MIN_FIT_POINTS,
) -> list:
    """Simulate, truncate, and sweep: one trajectory per series length.

    Draws each series from the symmetric generator, truncates at n_std
    sample standard deviations (the cutoff is iterated to its fixed
    point on the surviving subsample, so the scale is self-consistent
    rather than inflated by the very tail being removed; pass
    ``n_std=inf`` for no truncation), and fits across the swept levels.

    Per-length failures are logged and skipped so one pathological cell
    cannot abort the batch; if every length fails, the first error is
    re-raised.  Deterministic per seed: each length gets an independent
    child stream derived from (seed, index).
    """
    if gen.beta != 0.0:
        raise InvalidParameterError("the truncation experiment uses a symmetric generator")
    lengths = [int(n) for n in lengths]
    if not lengths:
        raise InvalidParameterError("lengths must be non-empty")
    trajectories = []
    first_error: LevycrossError | None = None
    for idx, length in enumerate(lengths):
        rng = np.random.default_rng(np.random.SeedSequence([int(seed), idx]))
        draw = stable_sample(gen, length, rng)
        label = f"length={length:d},n_std={n_std:g}"
        try:
            kept = draw if math.isinf(n_std) else hard_truncate(draw, n_std, iterate=True)
            series = ReturnSeries(values=kept, n_conv=1)
            trajectories.append(
                alpha_trajectory(series, levels, min_points=min_points, source_label=label)
            )
        except LevycrossError as err:
            log.warning("experiment cell %s failed: %s", label, err)
            if first_error is None:
                first_error = err
    if not trajectories:
        assert first_error is not None
        raise first_error
    return trajectories
