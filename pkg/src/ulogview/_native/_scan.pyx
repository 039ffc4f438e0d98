# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled record framing scan and record gather.

Same contracts as ulogview.ulog._scan_py; see there for semantics.
"""

import numpy as np


def scan_frames(data, Py_ssize_t start, boundaries=()):
    cdef const unsigned char[:] buf = data
    cdef Py_ssize_t n = buf.shape[0]
    cdef Py_ssize_t bounds_c[8]
    cdef Py_ssize_t nb = 0
    # filter in Python space: raw offsets can exceed Py_ssize_t
    for py_b in sorted(set(boundaries)):
        if start < py_b <= n and nb < 8:
            bounds_c[nb] = py_b
            nb += 1

    # first pass: count records so output arrays are allocated exactly once
    cdef Py_ssize_t pos = start
    cdef Py_ssize_t bi = 0
    cdef Py_ssize_t count = 0
    cdef Py_ssize_t size, end
    cdef bint truncated = False
    while pos < n:
        while bi < nb and bounds_c[bi] <= pos:
            bi += 1
        if pos + 3 > n:
            truncated = True
            break
        size = buf[pos] | (buf[pos + 1] << 8)
        end = pos + 3 + size
        if bi < nb and end > bounds_c[bi]:
            pos = bounds_c[bi]
            bi += 1
            continue
        if end > n:
            truncated = True
            break
        count += 1
        pos = end

    types_arr = np.empty(count, dtype=np.uint8)
    offs_arr = np.empty(count, dtype=np.int64)
    sizes_arr = np.empty(count, dtype=np.int64)
    cdef unsigned char[:] types_v = types_arr
    cdef long long[:] offs_v = offs_arr
    cdef long long[:] sizes_v = sizes_arr

    pos = start
    bi = 0
    cdef Py_ssize_t k = 0
    while pos < n and k < count:
        while bi < nb and bounds_c[bi] <= pos:
            bi += 1
        if pos + 3 > n:
            break
        size = buf[pos] | (buf[pos + 1] << 8)
        end = pos + 3 + size
        if bi < nb and end > bounds_c[bi]:
            pos = bounds_c[bi]
            bi += 1
            continue
        if end > n:
            break
        types_v[k] = buf[pos + 2]
        offs_v[k] = pos + 3
        sizes_v[k] = size
        k += 1
        pos = end
    return types_arr, offs_arr, sizes_arr, truncated


def gather_records(data, offsets, Py_ssize_t reclen):
    cdef const unsigned char[:] buf = data
    cdef long long[:] offs = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef Py_ssize_t n = offs.shape[0]
    out_arr = np.empty((n, reclen), dtype=np.uint8)
    if n == 0 or reclen == 0:
        return out_arr
    cdef unsigned char[:, :] out = out_arr
    cdef Py_ssize_t i, j, o
    for i in range(n):
        o = offs[i]
        for j in range(reclen):
            out[i, j] = buf[o + j]
    return out_arr
