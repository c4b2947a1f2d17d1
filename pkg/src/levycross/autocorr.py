"""Autocorrelation of returns and absolute returns, with white-noise bands.

Coefficients use the biased (divisor-N, common-mean) normalization,
which keeps every coefficient in [-1, 1] and the sequence positive
semidefinite.  The confidence band is the usual two-sided 5% white-noise
band, +-1.96/sqrt(N); the multiplier is configurable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateVarianceError, InvalidParameterError
from .returns import ReturnSeries

__all__ = ["WHITE_NOISE_MULTIPLIER", "AcfResult", "acf", "abs_acf", "persistence_time"]

WHITE_NOISE_MULTIPLIER = 1.96


@dataclass(frozen=True)
class AcfResult:
    lags: np.ndarray
    coefficients: np.ndarray
    band: float
    n: int

    def __post_init__(self) -> None:
        lags = np.asarray(self.lags, dtype=int)
        coef = np.asarray(self.coefficients, dtype=float)
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "coefficients", coef)
        if lags.shape != coef.shape or lags.size == 0:
            raise InvalidParameterError("lags and coefficients must align and be non-empty")
        if lags[0] != 0 or coef[0] != 1.0:
            raise InvalidParameterError("lag-0 coefficient must be exactly 1")
        if np.any(np.abs(coef) > 1.0 + 1e-12):
            raise InvalidParameterError("autocorrelation coefficients must lie in [-1, 1]")
        if not self.band > 0.0:
            raise InvalidParameterError(f"band must be positive, got {self.band}")


def _series_values(series) -> np.ndarray:
    if isinstance(series, ReturnSeries):
        return series.values
    return np.asarray(series, dtype=float)


def _acf_of(x: np.ndarray, max_lag: int, band_multiplier: float) -> AcfResult:
    n = x.size
    if max_lag < 1:
        raise InvalidParameterError(f"max_lag must be >= 1, got {max_lag}")
    if n <= max_lag:
        raise InvalidParameterError(f"series length {n} must exceed max_lag {max_lag}")
    dev = x - x.mean()
    c0 = float(np.dot(dev, dev)) / n
    if c0 <= 0.0:
        raise DegenerateVarianceError("constant series has no autocorrelation")
    coef = np.empty(max_lag + 1)
    coef[0] = 1.0
    for lag in range(1, max_lag + 1):
        coef[lag] = (float(np.dot(dev[:-lag], dev[lag:])) / n) / c0
    return AcfResult(
        lags=np.arange(max_lag + 1),
        coefficients=coef,
        band=band_multiplier / np.sqrt(n),
        n=n,
    )


def acf(series, max_lag: int, *, band_multiplier: float = WHITE_NOISE_MULTIPLIER) -> AcfResult:
    """Autocorrelation at lags 0..max_lag."""
    return _acf_of(_series_values(series), max_lag, band_multiplier)


def abs_acf(series, max_lag: int, *, band_multiplier: float = WHITE_NOISE_MULTIPLIER) -> AcfResult:
    """Autocorrelation of the absolute values (volatility-clustering probe)."""
    return _acf_of(np.abs(_series_values(series)), max_lag, band_multiplier)


def persistence_time(result: AcfResult, mean_dt: float) -> float:
    """Serial-dependence span in seconds.

    If the lag-1 coefficient is already inside the band, there is no
    measurable persistence and the result is 0.  Otherwise the span runs
    through the consecutive run of above-band coefficients and is
    converted at the lag where the run ends (the first lag back inside
    the band, or max_lag when the run never ends within the window).
    """
    if not mean_dt > 0.0:
        raise InvalidParameterError(f"mean_dt must be positive, got {mean_dt}")
    above = result.coefficients[1:] > result.band
    if above.size == 0 or not above[0]:
        return 0.0
    inside = np.nonzero(~above)[0]
    end_lag = int(inside[0]) + 1 if inside.size else int(result.lags[-1])
    return end_lag * mean_dt
