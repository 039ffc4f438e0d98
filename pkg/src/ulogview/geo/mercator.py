"""Web Mercator projection to world-normalized [0,1]^2 coordinates.

Multiply by 256 * 2^zoom for slippy-map pixel space.
"""

from __future__ import annotations

import math

from ..errors import LatitudeOutOfRange

MAX_LATITUDE = 85.05112878


def project_web_mercator(lat: float, lon: float) -> tuple[float, float]:
    if abs(lat) > MAX_LATITUDE:
        raise LatitudeOutOfRange(f"|{lat}| exceeds {MAX_LATITUDE}")
    x = (lon + 180.0) / 360.0
    s = math.sin(math.radians(lat))
    y = 0.5 - math.atanh(s) / (2.0 * math.pi)
    # rounding can push the poles a few ulp outside the unit square
    return min(max(x, 0.0), 1.0), min(max(y, 0.0), 1.0)


def unproject_web_mercator(x: float, y: float) -> tuple[float, float]:
    lon = x * 360.0 - 180.0
    lat = math.degrees(math.atan(math.sinh((1.0 - 2.0 * y) * math.pi)))
    return lat, lon
