"""Pure-Python record framing scan and record gather.

Fallback twins of the compiled kernels in ulogview._native._scan; same
signatures, same results, selected by ulogview.kernels at import time.
"""

from __future__ import annotations

import numpy as np


def scan_frames(
    data: bytes, start: int, boundaries: tuple[int, ...] = ()
) -> tuple[np.ndarray, np.ndarray, np.ndarray, bool]:
    """Walk the length-prefixed record stream starting at ``start``.

    Returns (types, offsets, sizes, truncated): per-record tag byte, payload
    offset and payload size, plus whether the file ended mid-record.
    ``boundaries`` are resume offsets for appended data; a record that would
    straddle one is discarded and the scan restarts at the boundary.
    """
    n = len(data)
    buf = data
    pos = start
    bounds = sorted(b for b in boundaries if start < b <= n)
    bi = 0
    nb = len(bounds)
    types: list[int] = []
    offs: list[int] = []
    sizes: list[int] = []
    truncated = False
    while pos < n:
        while bi < nb and bounds[bi] <= pos:
            bi += 1
        if pos + 3 > n:
            truncated = True
            break
        size = buf[pos] | (buf[pos + 1] << 8)
        end = pos + 3 + size
        if bi < nb and end > bounds[bi]:
            pos = bounds[bi]
            bi += 1
            continue
        if end > n:
            truncated = True
            break
        types.append(buf[pos + 2])
        offs.append(pos + 3)
        sizes.append(size)
        pos = end
    return (
        np.array(types, dtype=np.uint8),
        np.array(offs, dtype=np.int64),
        np.array(sizes, dtype=np.int64),
        truncated,
    )


def gather_records(data: bytes, offsets: np.ndarray, reclen: int) -> np.ndarray:
    """Copy ``reclen`` bytes from each offset into an (n, reclen) array.

    Chunked fancy indexing keeps the index matrix small on big logs.
    """
    n = len(offsets)
    out = np.empty((n, reclen), dtype=np.uint8)
    if n == 0 or reclen == 0:
        return out
    src = np.frombuffer(data, dtype=np.uint8)
    lane = np.arange(reclen, dtype=np.int64)
    chunk = max(1, (1 << 22) // max(reclen, 1))
    for i in range(0, n, chunk):
        o = offsets[i : i + chunk]
        out[i : i + len(o)] = src[o[:, None] + lane]
    return out
