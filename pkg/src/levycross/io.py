"""Reading and writing the delimited interchange formats.

Two input layouts are accepted, distinguished by header:

* ``timestamp,value`` tick files; timestamps are epoch seconds or
  ISO-8601 (auto-detected per row, naive stamps treated as UTC)
* ``date,close`` daily-closure files; dates are ISO-8601

Malformed rows carry their 1-based line number; the ``on_bad_row``
policy is either ``"fail"`` (raise on the first bad row, the default)
or ``"skip"`` (log and continue).  Floats are written with ``repr`` so
round-trips are exact and output is byte-deterministic.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .errors import BadRowError, EmptySeriesError, InvalidParameterError
from .returns import ReturnSeries, TickSeries

__all__ = [
    "read_tick_csv",
    "write_tick_csv",
    "read_returns_csv",
    "write_returns_csv",
    "write_series_meta",
    "read_series_meta",
]

log = logging.getLogger(__name__)

_TICK_HEADERS = {("timestamp", "value"), ("date", "close")}
_POLICIES = ("fail", "skip")


def _parse_time(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        pass
    iso = text.strip()
    if iso.endswith(("Z", "z")):
        iso = iso[:-1] + "+00:00"
    stamp = datetime.fromisoformat(iso)
    if stamp.tzinfo is None:
        stamp = stamp.replace(tzinfo=timezone.utc)
    return stamp.timestamp()


def _check_policy(on_bad_row: str) -> None:
    if on_bad_row not in _POLICIES:
        raise InvalidParameterError(f"on_bad_row must be one of {_POLICIES}, got {on_bad_row!r}")


def read_tick_csv(path, *, on_bad_row: str = "fail") -> TickSeries:
    """Load a tick or daily-closure CSV into a TickSeries."""
    _check_policy(on_bad_row)
    path = Path(path)
    times: list[float] = []
    values: list[float] = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise EmptySeriesError(f"{path}: file is empty")
        header_key = tuple(col.strip().lower() for col in header)
        if header_key not in _TICK_HEADERS:
            raise BadRowError(
                f"{path}: unrecognized header {header!r}; expected timestamp,value or date,close",
                line_number=1,
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                if len(row) != 2:
                    raise ValueError(f"expected 2 fields, got {len(row)}")
                t = _parse_time(row[0])
                v = float(row[1])
                if not math.isfinite(v) or v <= 0.0:
                    raise ValueError(f"value must be finite and positive, got {row[1]!r}")
            except ValueError as err:
                if on_bad_row == "fail":
                    raise BadRowError(f"{path}:{lineno}: {err}", line_number=lineno) from err
                log.warning("%s:%d: skipping bad row (%s)", path, lineno, err)
                continue
            times.append(t)
            values.append(v)
    if not values:
        raise EmptySeriesError(f"{path}: no usable data rows")
    return TickSeries(values=np.array(values), timestamps=np.array(times))


def write_tick_csv(path, ticks: TickSeries) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["timestamp", "value"])
        if ticks.timestamps is None:
            raise InvalidParameterError("tick series has no timestamps to write")
        for t, v in zip(ticks.timestamps, ticks.values):
            writer.writerow([repr(float(t)), repr(float(v))])


def write_returns_csv(path, series: ReturnSeries) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["value"])
        for v in series.values:
            writer.writerow([repr(float(v))])


def read_returns_csv(path, *, meta_path=None, on_bad_row: str = "fail") -> ReturnSeries:
    """Load a single-column returns CSV, optionally with its JSON sidecar
    (aggregation level and mean spacing)."""
    _check_policy(on_bad_row)
    path = Path(path)
    values: list[float] = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise EmptySeriesError(f"{path}: file is empty")
        if tuple(col.strip().lower() for col in header) != ("value",):
            raise BadRowError(f"{path}: expected header 'value', got {header!r}", line_number=1)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                if len(row) != 1:
                    raise ValueError(f"expected 1 field, got {len(row)}")
                v = float(row[0])
                if not math.isfinite(v):
                    raise ValueError(f"non-finite value {row[0]!r}")
            except ValueError as err:
                if on_bad_row == "fail":
                    raise BadRowError(f"{path}:{lineno}: {err}", line_number=lineno) from err
                log.warning("%s:%d: skipping bad row (%s)", path, lineno, err)
                continue
            values.append(v)
    if not values:
        raise EmptySeriesError(f"{path}: no usable data rows")
    n_conv, mean_dt = 1, None
    if meta_path is not None:
        meta = read_series_meta(meta_path)
        n_conv = int(meta.get("n_conv", 1))
        mean_dt = meta.get("mean_dt")
    return ReturnSeries(values=np.array(values), n_conv=n_conv, mean_dt=mean_dt)


def write_series_meta(path, series: ReturnSeries) -> None:
    payload = {
        "count": len(series),
        "n_conv": series.n_conv,
        "mean_dt": series.mean_dt,
    }
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_series_meta(path) -> dict:
    return json.loads(Path(path).read_text())
