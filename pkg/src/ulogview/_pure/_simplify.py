"""Pure-Python polyline simplification kernels.

Fallback twins of ulogview._native._simplify. Both stages return keep
masks over the input points; orchestration (pre-pass chaining, tolerance
semantics) lives in ulogview.geo.simplify.
"""

from __future__ import annotations

import numpy as np


def radial_mask(xs: np.ndarray, ys: np.ndarray, sq_tol: float) -> np.ndarray:
    """Keep a point only when it is farther than sqrt(sq_tol) from the
    previously kept one; first and last points always survive."""
    n = len(xs)
    mask = np.zeros(n, dtype=np.uint8)
    mask[0] = 1
    mask[n - 1] = 1
    prev = 0
    for i in range(1, n - 1):
        dx = xs[i] - xs[prev]
        dy = ys[i] - ys[prev]
        if dx * dx + dy * dy > sq_tol:
            mask[i] = 1
            prev = i
    return mask


def dp_mask(xs: np.ndarray, ys: np.ndarray, sq_tol: float) -> np.ndarray:
    """Douglas-Peucker keep mask; span distances are computed vectorized."""
    n = len(xs)
    mask = np.zeros(n, dtype=np.uint8)
    mask[0] = 1
    mask[n - 1] = 1
    if n <= 2:
        return mask
    stack = [(0, n - 1)]
    while stack:
        first, last = stack.pop()
        if last - first < 2:
            continue
        px = xs[first + 1 : last]
        py = ys[first + 1 : last]
        x1, y1 = xs[first], ys[first]
        dx = xs[last] - x1
        dy = ys[last] - y1
        norm = dx * dx + dy * dy
        if norm > 0.0:
            t = np.clip(((px - x1) * dx + (py - y1) * dy) / norm, 0.0, 1.0)
            cx = x1 + dx * t
            cy = y1 + dy * t
        else:
            cx, cy = x1, y1
        d = (px - cx) ** 2 + (py - cy) ** 2
        k = int(np.argmax(d))
        if d[k] > sq_tol:
            index = first + 1 + k
            mask[index] = 1
            if index - first > 1:
                stack.append((first, index))
            if last - index > 1:
                stack.append((index, last))
    return mask
