"""Simplification property suite with independent brute-force oracles.

The deviation guarantee is checked against the simplified chain with a
from-scratch point-to-segment distance; the pre-filter semantics are
replicated independently so the test never trusts the kernels it checks.
"""

import math

import numpy as np
import pytest

from ulogview.geo import simplify_mask, simplify_polyline


def seg_dist(px, py, x1, y1, x2, y2):
    """Textbook point-to-segment distance."""
    dx, dy = x2 - x1, y2 - y1
    norm = dx * dx + dy * dy
    if norm == 0:
        return math.hypot(px - x1, py - y1)
    t = max(0.0, min(1.0, ((px - x1) * dx + (py - y1) * dy) / norm))
    return math.hypot(px - (x1 + t * dx), py - (y1 + t * dy))


def dist_to_chain(point, chain):
    return min(
        seg_dist(point[0], point[1], a[0], a[1], b[0], b[1])
        for a, b in zip(chain, chain[1:])
    )


def independent_radial(pts, tol):
    """Reference radial pre-filter: greedy anchor walk, endpoints kept."""
    keep = [0]
    anchor = 0
    for i in range(1, len(pts) - 1):
        if np.hypot(*(pts[i] - pts[anchor])) > tol:
            keep.append(i)
            anchor = i
    if keep[-1] != len(pts) - 1:
        keep.append(len(pts) - 1)
    return keep


def corpus(n_lines=1000, seed=100):
    rng = np.random.RandomState(seed)
    lines = []
    for i in range(n_lines):
        n = rng.randint(2, 150)
        kind = i % 3
        if kind == 0:
            pts = rng.uniform(0, 100, (n, 2))
        elif kind == 1:
            pts = np.cumsum(rng.normal(0, 2, (n, 2)), axis=0)
        else:
            t = np.linspace(0, 4, n)
            pts = np.stack(
                [t * 25 + rng.normal(0, 0.5, n), 30 * np.sin(t) + rng.normal(0, 0.5, n)],
                axis=1,
            )
        lines.append(pts)
    return lines


CORPUS = corpus(300)  # acceptance runs the full 1000
TOLERANCES = (0.25, 1.0, 4.0, 16.0)


class TestExamples:
    def test_tolerance_zero_is_identity(self):
        pts = np.array([[0.0, 0.0], [0.1, 0.05], [0.2, 0.0], [5.0, 3.0]])
        out = simplify_polyline(pts, 0.0)
        assert np.array_equal(out, pts)

    def test_collinear_interior_point_removed(self):
        out = simplify_polyline([(0, 0), (1, 0), (2, 0)], 0.1)
        assert out.tolist() == [[0, 0], [2, 0]]

    def test_hand_computed_perpendicular_distance(self):
        # deviation of (1,1) from chord (0,0)-(2,0) is exactly 1
        pts = [(0, 0), (1, 1), (2, 0)]
        assert simplify_polyline(pts, 2.0, high_quality=True).tolist() == [
            [0, 0], [2, 0],
        ]
        assert len(simplify_polyline(pts, 0.5, high_quality=True)) == 3

    def test_single_point(self):
        assert simplify_polyline([(3, 4)], 1.0).tolist() == [[3, 4]]

    def test_negative_tolerance_rejected(self):
        with pytest.raises(ValueError):
            simplify_polyline([(0, 0), (1, 1)], -1.0)


class TestProperties:
    @pytest.mark.parametrize("hq", [False, True], ids=["radial+dp", "dp-only"])
    def test_endpoints_count_and_deviation(self, hq):
        for pts in CORPUS:
            xs, ys = pts[:, 0], pts[:, 1]
            for tol in TOLERANCES:
                mask = simplify_mask(xs, ys, tol, high_quality=hq)
                assert mask[0] and mask[-1]
                assert mask.sum() <= len(pts)
                chain = pts[mask]
                if hq:
                    candidates = np.nonzero(~mask)[0]
                else:
                    # deviation holds for points the DP stage removed;
                    # radial-removed points sit within tol of their anchor
                    radial_keep = independent_radial(pts, tol)
                    assert not set(np.nonzero(mask)[0]) - set(radial_keep)
                    candidates = [i for i in radial_keep if not mask[i]]
                for i in candidates:
                    assert dist_to_chain(pts[i], chain) <= tol * (1 + 1e-9)

    @pytest.mark.parametrize("hq", [False, True], ids=["radial+dp", "dp-only"])
    def test_idempotence(self, hq):
        for pts in CORPUS:
            for tol in TOLERANCES:
                once = simplify_polyline(pts, tol, high_quality=hq)
                twice = simplify_polyline(once, tol, high_quality=hq)
                assert np.array_equal(once, twice)

    def test_monotone_point_count_dp(self):
        # guaranteed for Douglas-Peucker; the radial pre-filter can notch
        # the count up at large tolerances, so the law is scoped to dp-only
        for pts in CORPUS:
            counts = [
                len(simplify_polyline(pts, tol, high_quality=True))
                for tol in TOLERANCES
            ]
            assert all(b <= a for a, b in zip(counts, counts[1:]))

    def test_radial_removed_points_near_anchor(self):
        for pts in CORPUS[:100]:
            for tol in TOLERANCES:
                keep = independent_radial(pts, tol)
                kept = set(keep)
                anchor = 0
                for i in range(1, len(pts) - 1):
                    if i in kept:
                        anchor = i
                    else:
                        assert np.hypot(*(pts[i] - pts[anchor])) <= tol * (1 + 1e-9)
