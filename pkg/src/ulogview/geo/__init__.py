from .geojson import export_geojson
from .mercator import MAX_LATITUDE, project_web_mercator, unproject_web_mercator
from .simplify import (
    CHART_POINT_BUDGET,
    CHART_TOLERANCE_PX,
    GEO_TOLERANCE_PX,
    simplify_mask,
    simplify_polyline,
    simplify_to_budget,
)
from .trajectory import (
    GeoSample,
    Segment,
    align_attribute,
    build_trajectory,
    segments,
    split_by_window,
)

__all__ = [
    "CHART_POINT_BUDGET",
    "CHART_TOLERANCE_PX",
    "GEO_TOLERANCE_PX",
    "GeoSample",
    "MAX_LATITUDE",
    "Segment",
    "align_attribute",
    "build_trajectory",
    "export_geojson",
    "project_web_mercator",
    "segments",
    "simplify_mask",
    "simplify_polyline",
    "simplify_to_budget",
    "split_by_window",
    "unproject_web_mercator",
]
