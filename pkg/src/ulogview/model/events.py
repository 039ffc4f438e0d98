"""Timestamped categorical events: flight-mode changes and logged text."""

from __future__ import annotations

from dataclasses import dataclass

from ..ulog.types import FlightLog
from .config import ModelConfig, load_model_config

KIND_MODE = "flight_mode_change"
KIND_TEXT = "logged_message"


@dataclass(frozen=True)
class Event:
    timestamp_us: int
    kind: str
    label: str
    category_index: int


def extract_events(log: FlightLog, config: ModelConfig | None = None) -> list[Event]:
    """One event per flight-mode change point (consecutive duplicates
    collapsed, the first sample always reported) plus every logged text
    message, sorted by timestamp."""
    cfg = config or load_model_config()
    events: list[Event] = []

    if cfg.flight_mode is not None:
        message, field = cfg.flight_mode
        series = log.series.get((message, 0))
        col = series.columns.get(field) if series is not None else None
        if col is not None and len(col):
            last_label = None
            for ts, raw in zip(series.timestamps.tolist(), col.tolist()):
                mode = int(raw)
                label = cfg.mode_label(mode)
                if label != last_label:
                    events.append(Event(ts, KIND_MODE, label, mode))
                    last_label = label

    for msg in log.logged_text:
        events.append(
            Event(msg.timestamp_us, KIND_TEXT, msg.text, msg.severity)
        )

    events.sort(key=lambda e: (e.timestamp_us, e.kind))
    return events
