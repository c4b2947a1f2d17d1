"""Tick-series preprocessing and temporal aggregation of log returns.

The pipeline mirrors common practice for high-frequency quote data:
consecutive repeated values (no-activity ticks) are dropped first, log
returns are taken between successive retained values, and aggregated
series are built by summing non-overlapping blocks of consecutive
returns.  A trailing partial block is discarded, so an input of length
N yields floor(N / n_conv) aggregated observations.

Moments reported by :func:`series_stats` use the population convention
(divisor N), and ``excess_kurtosis`` is the fourth standardized moment
minus 3 (zero for a Gaussian).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateVarianceError,
    EmptySeriesError,
    InvalidParameterError,
)

__all__ = [
    "TRADING_DAY_SECONDS",
    "TickSeries",
    "ReturnSeries",
    "SeriesStats",
    "dedup_ticks",
    "log_returns",
    "convolve_returns",
    "series_stats",
    "excess_kurtosis",
]

# Default trading-day length: six and a half hours.
TRADING_DAY_SECONDS = 23400.0


@dataclass(frozen=True)
class TickSeries:
    """Raw or deduplicated tick observations.

    ``values`` must be strictly positive (prices or index levels);
    ``timestamps`` (seconds, e.g. epoch) are optional but, when present,
    must be nondecreasing and aligned with ``values``.
    """

    values: np.ndarray
    timestamps: np.ndarray | None = None

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size == 0:
            raise EmptySeriesError("tick series must be a non-empty 1-d array")
        if not (np.all(np.isfinite(values)) and np.all(values > 0.0)):
            raise InvalidParameterError("tick values must be finite and strictly positive")
        if self.timestamps is not None:
            ts = np.asarray(self.timestamps, dtype=float)
            object.__setattr__(self, "timestamps", ts)
            if ts.shape != values.shape:
                raise InvalidParameterError("timestamps must align with values")
            if np.any(np.diff(ts) < 0.0):
                raise InvalidParameterError("timestamps must be nondecreasing")

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class ReturnSeries:
    """Log-return series at some aggregation level.

    ``mean_dt`` is the mean spacing in seconds between the *underlying*
    fluctuations (level-1 returns); it is deliberately left unchanged by
    aggregation so that level counts convert to wall-clock time as
    ``n_conv * mean_dt``.
    """

    values: np.ndarray
    n_conv: int = 1
    mean_dt: float | None = None

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size == 0:
            raise EmptySeriesError("return series must be a non-empty 1-d array")
        if int(self.n_conv) < 1 or int(self.n_conv) != self.n_conv:
            raise InvalidParameterError(f"n_conv must be a positive integer, got {self.n_conv}")
        object.__setattr__(self, "n_conv", int(self.n_conv))
        if self.mean_dt is not None and not self.mean_dt > 0.0:
            raise InvalidParameterError(f"mean_dt must be positive, got {self.mean_dt}")

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class SeriesStats:
    count: int
    mean: float
    variance: float
    excess_kurtosis: float
    mean_dt: float | None = None


def dedup_ticks(ticks: TickSeries) -> TickSeries:
    """Drop consecutive repeats, keeping the first tick of each run.

    Idempotent: applying it twice equals applying it once.
    """
    v = ticks.values
    keep = np.empty(v.size, dtype=bool)
    keep[0] = True
    np.not_equal(v[1:], v[:-1], out=keep[1:])
    ts = ticks.timestamps[keep] if ticks.timestamps is not None else None
    return TickSeries(values=v[keep], timestamps=ts)


def log_returns(ticks: TickSeries) -> ReturnSeries:
    """Log returns between successive ticks: log(y[k+1]) - log(y[k]).

    Requires at least two ticks.  When timestamps are available,
    ``mean_dt`` is the mean spacing between them.
    """
    if len(ticks) < 2:
        raise EmptySeriesError("need at least two ticks to form returns")
    logs = np.log(ticks.values)
    mean_dt = None
    if ticks.timestamps is not None:
        span = float(ticks.timestamps[-1] - ticks.timestamps[0])
        if span > 0.0:
            mean_dt = span / (len(ticks) - 1)
    return ReturnSeries(values=np.diff(logs), n_conv=1, mean_dt=mean_dt)


def convolve_returns(series: ReturnSeries, n_conv: int) -> ReturnSeries:
    """Aggregate a level-1 series by summing blocks of n_conv returns.

    The trailing partial block (if any) is discarded.
    """
    if series.n_conv != 1:
        raise InvalidParameterError(
            f"aggregation starts from a level-1 series, got level {series.n_conv}"
        )
    if n_conv < 1:
        raise InvalidParameterError(f"n_conv must be >= 1, got {n_conv}")
    if n_conv == 1:
        return ReturnSeries(values=series.values.copy(), n_conv=1, mean_dt=series.mean_dt)
    n_blocks = len(series) // n_conv
    if n_blocks < 1:
        raise EmptySeriesError(
            f"series of length {len(series)} has no complete block at level {n_conv}"
        )
    v = series.values[: n_blocks * n_conv]
    blocks = v.reshape(n_blocks, n_conv)
    # column-by-column accumulation keeps strict left-to-right order inside
    # each block, so the result is bit-identical to a plain running sum
    # (reduceat and ndarray.sum use pairwise summation and are not)
    sums = blocks[:, 0].copy()
    for j in range(1, n_conv):
        sums += blocks[:, j]
    return ReturnSeries(values=sums, n_conv=n_conv, mean_dt=series.mean_dt)


def _values_of(series) -> tuple[np.ndarray, float | None]:
    if isinstance(series, ReturnSeries):
        return series.values, series.mean_dt
    if isinstance(series, TickSeries):
        return series.values, None
    return np.asarray(series, dtype=float), None


def series_stats(series) -> SeriesStats:
    """Population-convention summary moments of a series.

    Accepts a ReturnSeries, a TickSeries (its values), or a plain array.
    Requires at least 4 observations; a constant series raises
    DegenerateVarianceError because kurtosis is undefined for it.
    """
    x, mean_dt = _values_of(series)
    if x.ndim != 1 or x.size < 4:
        raise InvalidParameterError("need at least 4 observations for summary moments")
    if np.ptp(x) == 0.0:
        # catch exact constancy up front: the subtracted mean would otherwise
        # leave pure rounding noise and a meaningless kurtosis
        raise DegenerateVarianceError("zero variance: kurtosis undefined for a constant series")
    mean = float(x.mean())
    dev = x - mean
    variance = float(np.mean(dev ** 2))
    if variance <= 0.0:
        raise DegenerateVarianceError("zero variance: kurtosis undefined for a constant series")
    fourth = float(np.mean(dev ** 4))
    return SeriesStats(
        count=int(x.size),
        mean=mean,
        variance=variance,
        excess_kurtosis=fourth / variance ** 2 - 3.0,
        mean_dt=mean_dt,
    )


def excess_kurtosis(series) -> float:
    """Fourth standardized moment minus 3 (population convention)."""
    return series_stats(series).excess_kurtosis
