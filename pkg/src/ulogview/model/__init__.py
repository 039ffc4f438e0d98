from .config import LayerConfig, ModelConfig, load_model_config
from .events import KIND_MODE, KIND_TEXT, Event, extract_events
from .meta import FlightMeta, PathHierarchy, ResolvedLayer, extract_hierarchy, flight_meta
from .series import (
    AttributeRef,
    TimeSeries,
    TimeWindow,
    detect_constant,
    get_series,
    summarize,
    window_series,
)

__all__ = [
    "AttributeRef",
    "Event",
    "FlightMeta",
    "KIND_MODE",
    "KIND_TEXT",
    "LayerConfig",
    "ModelConfig",
    "PathHierarchy",
    "ResolvedLayer",
    "TimeSeries",
    "TimeWindow",
    "detect_constant",
    "extract_events",
    "extract_hierarchy",
    "flight_meta",
    "get_series",
    "load_model_config",
    "summarize",
    "window_series",
]
