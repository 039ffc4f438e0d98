#!/usr/bin/env python3
"""Benchmark the compiled kernels against their pure fallbacks.

Usage: python scripts/bench_kernels.py [--size-mb 32]

Covers the two hot paths: the record framing scan + gather that dominate
parse time, and polyline simplification on a dense chart series.
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sample_flights import big_log  # noqa: E402
from ulogview._pure import _scan as scan_pure  # noqa: E402
from ulogview._pure import _simplify as simplify_pure  # noqa: E402

try:
    from ulogview._native import _scan as scan_native
    from ulogview._native import _simplify as simplify_native
except ImportError:
    scan_native = simplify_native = None


def timeit(fn, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--size-mb", type=float, default=32.0)
    args = parser.parse_args()

    print(f"building ~{args.size_mb:.0f} MB synthetic log ...")
    data, _ = big_log(args.size_mb)
    print(f"  {len(data) / 1e6:.1f} MB\n")

    rows = []

    t_pure, frames = timeit(lambda: scan_pure.scan_frames(data, 16, ()))
    rows.append(("scan_frames", t_pure, None))
    if scan_native:
        t_nat, frames_n = timeit(lambda: scan_native.scan_frames(data, 16, ()))
        assert all(np.array_equal(a, b) for a, b in zip(frames[:3], frames_n[:3]))
        rows[-1] = ("scan_frames", t_pure, t_nat)

    offs = frames[1][frames[0] == ord("D")] + 2
    t_pure, gathered = timeit(lambda: scan_pure.gather_records(data, offs[:500_000], 20))
    rows.append(("gather_records", t_pure, None))
    if scan_native:
        t_nat, gathered_n = timeit(
            lambda: scan_native.gather_records(data, offs[:500_000], 20)
        )
        assert np.array_equal(gathered, gathered_n)
        rows[-1] = ("gather_records", t_pure, t_nat)

    rng = np.random.RandomState(1)
    n = 200_000
    xs = np.linspace(0, 2000, n) + rng.normal(0, 0.1, n)
    ys = np.cumsum(rng.normal(0, 1.0, n))

    t_pure, m_p = timeit(lambda: simplify_pure.dp_mask(xs, ys, 1.0))
    rows.append(("dp_mask (200k pts)", t_pure, None))
    if simplify_native:
        t_nat, m_n = timeit(lambda: simplify_native.dp_mask(xs, ys, 1.0))
        assert np.array_equal(m_p, m_n)
        rows[-1] = ("dp_mask (200k pts)", t_pure, t_nat)

    t_pure, r_p = timeit(lambda: simplify_pure.radial_mask(xs, ys, 1.0))
    rows.append(("radial_mask (200k pts)", t_pure, None))
    if simplify_native:
        t_nat, r_n = timeit(lambda: simplify_native.radial_mask(xs, ys, 1.0))
        assert np.array_equal(r_p, r_n)
        rows[-1] = ("radial_mask (200k pts)", t_pure, t_nat)

    print(f"{'kernel':<26} {'pure':>10} {'native':>10} {'speedup':>9}")
    for name, tp, tn in rows:
        if tn is None:
            print(f"{name:<26} {tp * 1e3:>8.1f}ms {'n/a':>10} {'':>9}")
        else:
            print(f"{name:<26} {tp * 1e3:>8.1f}ms {tn * 1e3:>8.1f}ms {tp / tn:>8.1f}x")
    if not scan_native:
        print("\nextensions not built; run `pip install -e .` with a compiler")


if __name__ == "__main__":
    main()
