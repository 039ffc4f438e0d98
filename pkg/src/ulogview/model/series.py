"""Attribute resolution, time-window filtering, and per-series statistics.

All operations are pure reads over an immutable FlightLog. Window bounds
are inclusive on both ends so brushing exactly onto a sample keeps it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptySeries, UnknownAttribute
from ..ulog.types import FlightLog


@dataclass(frozen=True)
class AttributeRef:
    message: str
    field: str
    multi_id: int = 0

    def __str__(self) -> str:
        if self.multi_id:
            return f"{self.message}[{self.multi_id}].{self.field}"
        return f"{self.message}.{self.field}"

    @classmethod
    def parse(cls, text: str) -> "AttributeRef":
        """Parse ``message.field`` or ``message[2].field``. The field part
        may itself contain dots (flattened nested members)."""
        head, sep, field = text.partition(".")
        if not sep or not field:
            raise ValueError(f"not an attribute reference: {text!r}")
        multi_id = 0
        if head.endswith("]"):
            name, _, idx = head[:-1].partition("[")
            head = name
            multi_id = int(idx)
        return cls(message=head, field=field, multi_id=multi_id)


@dataclass(frozen=True)
class TimeWindow:
    start_us: int
    end_us: int

    def __post_init__(self):
        if self.start_us > self.end_us:
            raise ValueError("window start after end")

    def intersect(self, other: "TimeWindow") -> "TimeWindow | None":
        start = max(self.start_us, other.start_us)
        end = min(self.end_us, other.end_us)
        return TimeWindow(start, end) if start <= end else None


@dataclass(frozen=True)
class TimeSeries:
    attr: AttributeRef
    timestamps: np.ndarray  # uint64 microseconds, non-decreasing
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.timestamps)

    def points(self) -> list[tuple[int, float]]:
        return list(zip(self.timestamps.tolist(), self.values.tolist()))


def window_series(series: TimeSeries, window: TimeWindow | None) -> TimeSeries:
    """Keep points with start <= t <= end; identity when window is None."""
    if window is None:
        return series
    lo = int(np.searchsorted(series.timestamps, window.start_us, side="left"))
    hi = int(np.searchsorted(series.timestamps, window.end_us, side="right"))
    return TimeSeries(
        attr=series.attr,
        timestamps=series.timestamps[lo:hi],
        values=series.values[lo:hi],
    )


def get_series(
    log: FlightLog, attr: AttributeRef, window: TimeWindow | None = None
) -> TimeSeries:
    key = (attr.message, attr.multi_id)
    series = log.series.get(key)
    if series is None:
        raise UnknownAttribute(f"no series {attr.message}[{attr.multi_id}]")
    col = series.columns.get(attr.field)
    if col is None:
        raise UnknownAttribute(f"{attr.message} has no field {attr.field!r}")
    return window_series(
        TimeSeries(attr=attr, timestamps=series.timestamps, values=col), window
    )


def detect_constant(series: TimeSeries):
    """The single shared value, or None when values differ. NaN counts as
    equal to NaN, so an all-NaN series is the constant NaN."""
    if len(series) == 0:
        raise EmptySeries(f"{series.attr} has no samples")
    v = series.values
    if v.dtype.kind == "f":
        nan = np.isnan(v)
        if nan.all():
            return float("nan")
        if nan.any():
            return None
    first = v[0]
    return first.item() if np.all(v == first) else None


def summarize(series: TimeSeries) -> dict:
    """min / max / mean over non-NaN values; count is total points."""
    if len(series) == 0:
        raise EmptySeries(f"{series.attr} has no samples")
    v = np.asarray(series.values, dtype=np.float64)
    nan_count = int(np.isnan(v).sum())
    good = v[~np.isnan(v)]
    if len(good):
        stats = (float(good.min()), float(good.max()), float(good.mean()))
    else:
        stats = (float("nan"),) * 3
    return {
        "min": stats[0],
        "max": stats[1],
        "mean": stats[2],
        "count": len(series),
        "nan_count": nan_count,
    }
