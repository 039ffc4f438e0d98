"""Command-hierarchy resolution and whole-flight metadata."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..ulog.types import FlightLog
from .config import LayerConfig, ModelConfig, load_model_config


@dataclass(frozen=True)
class ResolvedLayer:
    """A hierarchy layer whose message and fields exist in this log."""

    name: str  # recorded | estimated | setpoints
    config: LayerConfig
    multi_id: int = 0

    def key(self) -> tuple[str, int]:
        return (self.config.message, self.multi_id)


@dataclass(frozen=True)
class PathHierarchy:
    recorded: ResolvedLayer | None = None
    estimated: ResolvedLayer | None = None
    setpoints: ResolvedLayer | None = None

    def layer(self, name: str) -> ResolvedLayer | None:
        return getattr(self, name, None)


@dataclass(frozen=True)
class FlightMeta:
    duration_us: int
    reference_lat: float | None
    reference_lon: float | None
    message_count: int
    attribute_count: int
    truncated: bool


def _resolve_layer(
    log: FlightLog, name: str, cfg: LayerConfig
) -> ResolvedLayer | None:
    series = log.series.get((cfg.message, 0))
    if series is None:
        return None
    if cfg.lat not in series.columns or cfg.lon not in series.columns:
        return None
    return ResolvedLayer(name=name, config=cfg)


def extract_hierarchy(
    log: FlightLog, config: ModelConfig | None = None
) -> PathHierarchy:
    """Resolve each configured layer against the log; absent layers are
    omitted rather than failing (an empty-but-subscribed series resolves)."""
    cfg = config or load_model_config()
    resolved = {
        name: _resolve_layer(log, name, layer_cfg)
        for name, layer_cfg in cfg.layers.items()
    }
    return PathHierarchy(
        recorded=resolved.get("recorded"),
        estimated=resolved.get("estimated"),
        setpoints=resolved.get("setpoints"),
    )


def _first_valid_fix(
    log: FlightLog, layer: ResolvedLayer
) -> tuple[float, float] | None:
    series = log.series[layer.key()]
    cfg = layer.config
    lat = np.asarray(series.columns[cfg.lat], dtype=np.float64) * cfg.lat_scale
    lon = np.asarray(series.columns[cfg.lon], dtype=np.float64) * cfg.lon_scale
    ok = (lat != 0.0) | (lon != 0.0)
    if cfg.fix and cfg.fix in series.columns:
        ok &= np.asarray(series.columns[cfg.fix]) >= cfg.min_fix
    idx = np.nonzero(ok)[0]
    if len(idx) == 0:
        return None
    i = int(idx[0])
    return float(lat[i]), float(lon[i])


def flight_meta(log: FlightLog, config: ModelConfig | None = None) -> FlightMeta:
    """Duration, reference coordinate (first valid fix of the recorded
    layer), and size counters. A log without a usable position simply has
    no reference coordinate."""
    duration = 0
    for series in log.series.values():
        if len(series):
            span = int(series.timestamps[-1]) - int(series.timestamps[0])
            duration = max(duration, span)

    ref = None
    hierarchy = extract_hierarchy(log, config)
    if hierarchy.recorded is not None:
        ref = _first_valid_fix(log, hierarchy.recorded)

    return FlightMeta(
        duration_us=duration,
        reference_lat=ref[0] if ref else None,
        reference_lon=ref[1] if ref else None,
        message_count=len(log.series),
        attribute_count=sum(len(s.columns) for s in log.series.values()),
        truncated=log.truncated,
    )
