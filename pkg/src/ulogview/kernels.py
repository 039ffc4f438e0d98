"""Selects the compiled kernels when built, pure fallbacks otherwise.

Set ULOGVIEW_PURE=1 to force the pure implementations even when the
extensions are importable (used by the benchmark and the equivalence
tests).
"""

from __future__ import annotations

import os

from ._pure import _scan as _scan_py, _simplify as _simplify_py


def _load():
    if os.environ.get("ULOGVIEW_PURE", "").strip() not in ("", "0"):
        return _scan_py, _simplify_py, "pure"
    try:
        from ._native import _scan, _simplify
    except ImportError:
        return _scan_py, _simplify_py, "pure"
    return _scan, _simplify, "native"


scan_impl, simplify_impl, ACTIVE = _load()

scan_frames = scan_impl.scan_frames
gather_records = scan_impl.gather_records
radial_mask = simplify_impl.radial_mask
dp_mask = simplify_impl.dp_mask
