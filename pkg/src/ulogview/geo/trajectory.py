"""Flight path construction, segmentation, attribute alignment, and
window splitting.

A trajectory is the ordered list of valid position samples of one
hierarchy layer; consecutive samples bound the path segments everything
else hangs off. Attribute alignment is last-observation-carried-forward
keyed on a segment's start time: the segment is flown under the most
recent known state.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..errors import DegenerateTrajectory, NoPosition
from ..model.meta import ResolvedLayer
from ..model.series import TimeSeries, TimeWindow
from ..ulog.types import FlightLog


@dataclass(frozen=True)
class GeoSample:
    timestamp_us: int
    lat: float
    lon: float
    alt_m: float | None = None


@dataclass(frozen=True)
class Segment:
    t_start_us: int
    t_end_us: int
    p_start: GeoSample
    p_end: GeoSample
    value: float | None = None  # aligned attribute scalar, None = no data


def build_trajectory(log: FlightLog, layer: ResolvedLayer | None) -> list[GeoSample]:
    """Decode one layer's position samples, dropping invalid fixes
    (lat=lon=0, low fix quality, out-of-range coordinates) and duplicate
    timestamps."""
    if layer is None:
        raise NoPosition("layer not present in this log")
    series = log.series.get(layer.key())
    if series is None:
        raise NoPosition(f"no series {layer.config.message}")
    cfg = layer.config
    if cfg.lat not in series.columns or cfg.lon not in series.columns:
        raise NoPosition(f"{layer.config.message} has no position fields")

    lat = np.asarray(series.columns[cfg.lat], dtype=np.float64) * cfg.lat_scale
    lon = np.asarray(series.columns[cfg.lon], dtype=np.float64) * cfg.lon_scale
    alt = None
    if cfg.alt and cfg.alt in series.columns:
        alt = np.asarray(series.columns[cfg.alt], dtype=np.float64) * cfg.alt_scale

    ok = (lat != 0.0) | (lon != 0.0)
    ok &= (np.abs(lat) <= 90.0) & (lon > -180.0) & (lon <= 180.0)
    ok &= np.isfinite(lat) & np.isfinite(lon)
    if cfg.fix and cfg.fix in series.columns:
        ok &= np.asarray(series.columns[cfg.fix]) >= cfg.min_fix

    ts = series.timestamps
    out: list[GeoSample] = []
    last_ts = None
    for i in np.nonzero(ok)[0].tolist():
        t = int(ts[i])
        if last_ts is not None and t == last_ts:
            continue
        out.append(
            GeoSample(
                timestamp_us=t,
                lat=float(lat[i]),
                lon=float(lon[i]),
                alt_m=float(alt[i]) if alt is not None else None,
            )
        )
        last_ts = t
    return out


def segments(traj: list[GeoSample]) -> list[Segment]:
    """n-1 endpoint-chained segments from n samples."""
    if len(traj) < 2:
        raise DegenerateTrajectory(f"{len(traj)} samples cannot form a path")
    return [
        Segment(
            t_start_us=a.timestamp_us,
            t_end_us=b.timestamp_us,
            p_start=a,
            p_end=b,
        )
        for a, b in zip(traj, traj[1:])
    ]


def align_attribute(segs: list[Segment], series: TimeSeries) -> list[Segment]:
    """Value each segment with the attribute's last observation at or
    before its start; segments starting before the first observation get
    no data."""
    if not segs:
        return []
    starts = np.array([s.t_start_us for s in segs], dtype=np.uint64)
    idx = np.searchsorted(series.timestamps, starts, side="right") - 1
    out = []
    for seg, i in zip(segs, idx.tolist()):
        if i < 0:
            out.append(replace(seg, value=None))
        else:
            out.append(replace(seg, value=float(series.values[i])))
    return out


def split_by_window(
    segs: list[Segment], window: TimeWindow
) -> tuple[list[Segment], list[Segment]]:
    """Partition by segment start time, inclusive on both window ends."""
    inside, outside = [], []
    for seg in segs:
        if window.start_us <= seg.t_start_us <= window.end_us:
            inside.append(seg)
        else:
            outside.append(seg)
    return inside, outside
