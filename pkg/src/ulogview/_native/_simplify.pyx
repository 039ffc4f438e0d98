# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled polyline simplification kernels.

Same contracts as ulogview.geo._simplify_py; see there for semantics.
Built with -ffp-contract=off so keep decisions match the numpy fallback
bit for bit.
"""

import numpy as np


def radial_mask(xs, ys, double sq_tol):
    cdef const double[:] x = np.ascontiguousarray(xs, dtype=np.float64)
    cdef const double[:] y = np.ascontiguousarray(ys, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] mask = mask_arr
    mask[0] = 1
    mask[n - 1] = 1
    cdef Py_ssize_t prev = 0, i
    cdef double dx, dy
    for i in range(1, n - 1):
        dx = x[i] - x[prev]
        dy = y[i] - y[prev]
        if dx * dx + dy * dy > sq_tol:
            mask[i] = 1
            prev = i
    return mask_arr


cdef inline double _sq_seg_dist(double px, double py, double x1, double y1,
                                double x2, double y2) nogil:
    cdef double x = x1
    cdef double y = y1
    cdef double dx = x2 - x1
    cdef double dy = y2 - y1
    cdef double t
    if dx != 0.0 or dy != 0.0:
        t = ((px - x1) * dx + (py - y1) * dy) / (dx * dx + dy * dy)
        if t > 1.0:
            x = x2
            y = y2
        elif t > 0.0:
            x += dx * t
            y += dy * t
    dx = px - x
    dy = py - y
    return dx * dx + dy * dy


def dp_mask(xs, ys, double sq_tol):
    cdef const double[:] x = np.ascontiguousarray(xs, dtype=np.float64)
    cdef const double[:] y = np.ascontiguousarray(ys, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] mask = mask_arr
    mask[0] = 1
    mask[n - 1] = 1
    if n <= 2:
        return mask_arr

    stack_arr = np.empty(2 * n, dtype=np.int64)
    cdef long long[:] stack = stack_arr
    cdef Py_ssize_t sp = 0
    stack[0] = 0
    stack[1] = n - 1
    sp = 2
    cdef Py_ssize_t first, last, i, index
    cdef double maxd, d
    while sp > 0:
        last = stack[sp - 1]
        first = stack[sp - 2]
        sp -= 2
        if last - first < 2:
            continue
        maxd = sq_tol
        index = -1
        for i in range(first + 1, last):
            d = _sq_seg_dist(x[i], y[i], x[first], y[first], x[last], y[last])
            if d > maxd:
                maxd = d
                index = i
        if index >= 0:
            mask[index] = 1
            if index - first > 1:
                stack[sp] = first
                stack[sp + 1] = index
                sp += 2
            if last - index > 1:
                stack[sp] = index
                stack[sp + 1] = last
                sp += 2
    return mask_arr
