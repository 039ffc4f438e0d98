"""Attribute-value to color mapping for path and chart enrichment.

The sequential default is the published colorblind-safe ramp with equal
lightness steps; diverging, cyclic and categorical defaults are shipped
choices (documented, non-normative). Continuous scales interpolate
piecewise-linearly in sRGB between equally spaced stops: deterministic
everywhere, and the stops already encode the perceptual correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import InvalidDomain

SEQUENTIAL_STOPS = ("#f95e3f", "#e80936", "#91003e", "#691433", "#16132e")
DIVERGING_STOPS = ("#2166ac", "#67a9cf", "#f7f7f7", "#ef8a62", "#b2182b")
# first == last so wrap-around attributes (headings) meet themselves
CYCLIC_STOPS = ("#16132e", "#91003e", "#f95e3f", "#91003e", "#16132e")
# Okabe-Ito, minus black (reserved for UI chrome)
CATEGORICAL_PALETTE = (
    "#e69f00", "#56b4e9", "#009e73", "#f0e442",
    "#0072b2", "#d55e00", "#cc79a7",
)
NO_DATA_COLOR = "#9e9e9e"

_DEFAULT_STOPS = {
    "sequential": SEQUENTIAL_STOPS,
    "diverging": DIVERGING_STOPS,
    "cyclic": CYCLIC_STOPS,
}

CONTINUOUS_KINDS = frozenset(_DEFAULT_STOPS)


def _rgb(color: str) -> tuple[int, int, int]:
    c = color.lstrip("#")
    return int(c[0:2], 16), int(c[2:4], 16), int(c[4:6], 16)


def _hex(r: int, g: int, b: int) -> str:
    return f"#{r:02x}{g:02x}{b:02x}"


@dataclass(frozen=True)
class ColorScale:
    kind: str  # sequential | diverging | cyclic | categorical
    domain: tuple  # (min, max) for continuous kinds, labels otherwise
    stops: tuple[str, ...]


def make_scale(kind: str, domain, stops: Sequence[str] | None = None) -> ColorScale:
    if kind in CONTINUOUS_KINDS:
        lo, hi = float(domain[0]), float(domain[1])
        if not (lo < hi) or not math.isfinite(lo) or not math.isfinite(hi):
            raise InvalidDomain(f"need min < max, got ({domain[0]}, {domain[1]})")
        chosen = tuple(stops) if stops else _DEFAULT_STOPS[kind]
        if len(chosen) < 2:
            raise InvalidDomain("continuous scales need at least two stops")
        return ColorScale(kind=kind, domain=(lo, hi), stops=chosen)
    if kind == "categorical":
        labels = tuple(domain)
        chosen = tuple(stops) if stops else CATEGORICAL_PALETTE
        return ColorScale(kind=kind, domain=labels, stops=chosen)
    raise ValueError(f"unknown scale kind {kind!r}")


def map_value(scale: ColorScale, value) -> str:
    """Value to sRGB hex. Clamps continuous values to the domain; missing
    values (None or NaN) get the neutral no-data gray, never an error."""
    if value is None:
        return NO_DATA_COLOR

    if scale.kind == "categorical":
        if isinstance(value, str):
            try:
                index = scale.domain.index(value)
            except ValueError:
                return NO_DATA_COLOR
        else:
            index = int(value)
        return scale.stops[index % len(scale.stops)]

    v = float(value)
    if math.isnan(v):
        return NO_DATA_COLOR
    lo, hi = scale.domain
    v = min(max(v, lo), hi)
    pos = (v - lo) / (hi - lo) * (len(scale.stops) - 1)
    i = int(pos)
    if i >= len(scale.stops) - 1:
        return scale.stops[-1]
    frac = pos - i
    if frac == 0.0:
        return scale.stops[i]
    r1, g1, b1 = _rgb(scale.stops[i])
    r2, g2, b2 = _rgb(scale.stops[i + 1])
    return _hex(
        round(r1 + (r2 - r1) * frac),
        round(g1 + (g2 - g1) * frac),
        round(b1 + (b2 - b1) * frac),
    )
