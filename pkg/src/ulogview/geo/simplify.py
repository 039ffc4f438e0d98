"""Polyline simplification with the radial + Douglas-Peucker pipeline.

high_quality off (default) runs a radial-distance pre-filter before
Douglas-Peucker, trading a little fidelity for a big speedup on dense
input; high_quality on runs Douglas-Peucker alone. Tolerance is in the
plane's own units (use projected units for geo paths, pixels for chart
series) and tolerance 0 is the identity.

Default tolerances, chosen perceptually rather than geographically:
  GEO_TOLERANCE_PX    0.5 px at the current zoom for map paths
  CHART_TOLERANCE_PX  0.25 px at render width for chart series
"""

from __future__ import annotations

import numpy as np

from .. import kernels

GEO_TOLERANCE_PX = 0.5
CHART_TOLERANCE_PX = 0.25
CHART_POINT_BUDGET = 2000


def simplify_mask(
    xs: np.ndarray, ys: np.ndarray, tolerance: float, high_quality: bool = False
) -> np.ndarray:
    """Boolean keep-mask over the input points."""
    if tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    n = len(xs)
    if n != len(ys):
        raise ValueError("xs and ys differ in length")
    keep = np.ones(n, dtype=bool)
    if n <= 2 or tolerance == 0:
        return keep
    sq_tol = tolerance * tolerance
    if high_quality:
        return kernels.dp_mask(xs, ys, sq_tol).astype(bool)
    radial = kernels.radial_mask(xs, ys, sq_tol).astype(bool)
    idx = np.nonzero(radial)[0]
    dp = kernels.dp_mask(xs[idx], ys[idx], sq_tol).astype(bool)
    keep[:] = False
    keep[idx[dp]] = True
    return keep


def simplify_polyline(
    points, tolerance: float, high_quality: bool = False
) -> np.ndarray:
    """Simplify an (n, 2) point array; first and last points survive."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("expected an (n, 2) point array")
    if len(pts) == 0:
        raise ValueError("polyline needs at least one point")
    mask = simplify_mask(pts[:, 0], pts[:, 1], tolerance, high_quality)
    return pts[mask]


def simplify_to_budget(
    xs: np.ndarray,
    ys: np.ndarray,
    tolerance: float = CHART_TOLERANCE_PX,
    budget: int = CHART_POINT_BUDGET,
    high_quality: bool = False,
) -> tuple[np.ndarray, float]:
    """Keep-mask fitting a point budget: the tolerance doubles until the
    simplified count fits (endpoints always survive, so the effective
    floor is 2). Returns (mask, tolerance actually used)."""
    mask = simplify_mask(xs, ys, tolerance, high_quality)
    doublings = 24
    while int(mask.sum()) > max(budget, 2) and doublings > 0:
        tolerance *= 2.0
        doublings -= 1
        mask = simplify_mask(xs, ys, tolerance, high_quality)
    return mask, tolerance
