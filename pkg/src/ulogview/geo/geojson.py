"""GeoJSON export of trajectory layers.

One LineString feature per resolved hierarchy layer; when an attribute is
given, its per-segment aligned values ride along as a properties array
(length = number of coordinates - 1). NaN values become null.
"""

from __future__ import annotations

import math

from ..errors import NoPosition
from ..model.meta import PathHierarchy
from ..model.series import AttributeRef, TimeSeries, TimeWindow, get_series
from ..ulog.types import FlightLog
from .trajectory import align_attribute, build_trajectory, segments


def _clean(values: list[float | None]) -> list[float | None]:
    return [None if v is None or math.isnan(v) else v for v in values]


def export_geojson(
    log: FlightLog,
    hierarchy: PathHierarchy,
    attr: AttributeRef | None = None,
    window: TimeWindow | None = None,
) -> dict:
    features = []
    attr_series: TimeSeries | None = None
    if attr is not None:
        attr_series = get_series(log, attr)

    for name in ("recorded", "estimated", "setpoints"):
        layer = hierarchy.layer(name)
        if layer is None:
            continue
        traj = build_trajectory(log, layer)
        if window is not None:
            traj = [
                p for p in traj if window.start_us <= p.timestamp_us <= window.end_us
            ]
        if len(traj) < 2:
            continue
        coords = [
            [p.lon, p.lat] if p.alt_m is None else [p.lon, p.lat, p.alt_m]
            for p in traj
        ]
        props: dict = {
            "layer": name,
            "message": layer.config.message,
            "timestamps_us": [p.timestamp_us for p in traj],
        }
        if attr_series is not None:
            segs = align_attribute(segments(traj), attr_series)
            props["attribute"] = str(attr)
            props["values"] = _clean([s.value for s in segs])
        features.append(
            {
                "type": "Feature",
                "geometry": {"type": "LineString", "coordinates": coords},
                "properties": props,
            }
        )

    if not features:
        raise NoPosition("no layer yields a path of two or more points")
    return {"type": "FeatureCollection", "features": features}
