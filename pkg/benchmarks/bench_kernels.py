"""Time the numba kernels against the numpy fallback on the same inputs.

Usage::

    python benchmarks/bench_kernels.py [--n 400] [--extra 1600] [--repeat 3]

Each kernel runs once untimed per backend (this absorbs numba's JIT
compile), then ``--repeat`` timed runs; the best time is reported.  The
two backends must agree on every output, and the script exits non-zero
if they do not.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from graphgen import strongly_connected  # noqa: E402

from diamgap import kernels  # noqa: E402
from diamgap.graph import Direction  # noqa: E402


def _cases(n: int, extra: int, seed: int):
    weighted = strongly_connected(n, extra, seed, wmax=10)
    unit = strongly_connected(n, extra, seed + 1)
    ip, ix, w = weighted.csr(Direction.OUT)
    uip, uix, _ = unit.csr(Direction.IN)
    src, dst, aw = weighted.arcs(Direction.OUT)
    sources = np.arange(min(n, 8), dtype=np.int64)
    return {
        "dijkstra": (ip, ix, w, sources),
        "bfs": (ip, ix, sources),
        "truncated_dijkstra": (ip, ix, w, 0, max(1, n // 4)),
        "apsp_matrix": (ip, ix, w),
        "weighted_diameter": (ip, ix, w),
        "unit_diameter": (uip, uix),
        "hop_limited": (src, dst, aw, n, 0, 16),
        "hop_limited_table": (src, dst, aw, n, 0, 16),
    }


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray) and a.dtype.kind == "f":
        return np.allclose(a, b, rtol=1e-9, atol=0.0, equal_nan=False) or np.array_equal(a, b)
    return np.array_equal(np.asarray(a), np.asarray(b))


def _time(fn, args, repeat: int) -> tuple[float, object]:
    out = fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=400)
    ap.add_argument("--extra", type=int, default=1600)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    fast, slow = kernels.load("numba"), kernels.load("numpy")
    cases = _cases(args.n, args.extra, args.seed)
    print(f"n={args.n} extra_edges={args.extra} repeat={args.repeat}")
    print(f"{'kernel':<20}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}  agree")
    mismatches = 0
    for name in kernels.KERNEL_NAMES:
        t_fast, out_fast = _time(getattr(fast, name), cases[name], args.repeat)
        t_slow, out_slow = _time(getattr(slow, name), cases[name], args.repeat)
        ok = _same(out_fast, out_slow)
        mismatches += not ok
        ratio = t_slow / t_fast if t_fast > 0 else float("inf")
        print(f"{name:<20}{t_fast:>12.5f}{t_slow:>12.5f}{ratio:>9.1f}x  {'yes' if ok else 'NO'}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
