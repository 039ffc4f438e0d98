from .profile import (
    ChartSpec,
    OverviewProfile,
    ProfileEntry,
    ProfileGroup,
    load_profile,
    resolve_profile,
)
from .scales import (
    CATEGORICAL_PALETTE,
    CYCLIC_STOPS,
    DIVERGING_STOPS,
    NO_DATA_COLOR,
    SEQUENTIAL_STOPS,
    ColorScale,
    make_scale,
    map_value,
)

__all__ = [
    "CATEGORICAL_PALETTE",
    "CYCLIC_STOPS",
    "ChartSpec",
    "ColorScale",
    "DIVERGING_STOPS",
    "NO_DATA_COLOR",
    "OverviewProfile",
    "ProfileEntry",
    "ProfileGroup",
    "SEQUENTIAL_STOPS",
    "load_profile",
    "make_scale",
    "map_value",
    "resolve_profile",
]
