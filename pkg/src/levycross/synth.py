"""Synthetic tick streams for demos and pipeline tests.

Real tick feeds contain long runs of repeated quotes (no price move).
The generator here takes a return series (the genuine moves), inserts a
geometric number of repeats after each move so that an expected
fraction of all ticks is a repeat, exponentiates the cumulative sum
into a positive price path, and stamps ticks with exponential waiting
times.  Running the stream back through dedup + log-returns recovers
the input moves (up to exp/log roundoff).
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidParameterError
from .returns import TickSeries

__all__ = ["ticks_from_returns"]


def ticks_from_returns(
    returns,
    *,
    repeat_fraction: float = 0.73,
    mean_tick_seconds: float = 5.2,
    start_value: float = 1000.0,
    start_time: float = 0.0,
    seed=0,
) -> TickSeries:
    """Build a tick stream whose deduplicated log returns are ``returns``.

    ``repeat_fraction`` is the expected share of ticks that repeat the
    previous value; ``mean_tick_seconds`` the mean spacing between raw
    ticks (so deduplicated spacing averages mean_tick_seconds divided by
    1 - repeat_fraction).
    """
    moves = np.asarray(returns, dtype=float).ravel()
    if moves.size == 0:
        raise InvalidParameterError("need at least one return to build ticks")
    if not 0.0 <= repeat_fraction < 1.0:
        raise InvalidParameterError(
            f"repeat_fraction must lie in [0, 1), got {repeat_fraction}"
        )
    if not mean_tick_seconds > 0.0:
        raise InvalidParameterError("mean_tick_seconds must be positive")
    if not start_value > 0.0:
        raise InvalidParameterError("start_value must be positive")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    walk = np.concatenate(([0.0], np.cumsum(moves)))
    if np.max(np.abs(walk)) > 500.0:
        raise InvalidParameterError(
            "cumulative log-price exceeds the double range; returns this large "
            "cannot dress a price path (use a realistic return scale, e.g. 1e-4)"
        )
    distinct = start_value * np.exp(walk)
    # repeats after each distinct value: geometric number of failures
    repeats = rng.geometric(1.0 - repeat_fraction, size=distinct.size) - 1
    counts = repeats + 1
    values = np.repeat(distinct, counts)
    gaps = rng.exponential(mean_tick_seconds, size=values.size)
    timestamps = start_time + np.cumsum(gaps)
    return TickSeries(values=values, timestamps=timestamps)
