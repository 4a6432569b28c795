#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Times each per-pixel kernel on a full-size field and the whole solver on a
noisy synthetic, printing a side-by-side table. Usage:

    python bench/bench_backends.py [--height 640] [--width 800] [--repeats 7]
"""

import argparse
import time

import numpy as np

from twophase import _kernels_py, backend, solver
from twophase.cli import make_synthetic
from twophase.solver import SolverParams

try:
    from twophase import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_cases(h, w):
    rng = np.random.default_rng(0)
    u = np.ascontiguousarray(rng.uniform(size=(h, w)))
    f = np.ascontiguousarray(rng.uniform(size=(h, w)))
    g = np.ascontiguousarray(rng.uniform(0.1, 1.0, size=(h, w)))
    r = np.ascontiguousarray(rng.normal(size=(h, w)))
    zx, zy = (np.ascontiguousarray(rng.normal(size=(h, w))) for _ in range(2))
    out1, out2, out3 = (np.empty_like(u) for _ in range(3))

    return [
        ("gradient", lambda k: k.gradient(u, out1, out2)),
        ("divergence", lambda k: k.divergence(zx, zy, out1)),
        ("jacobi_sweep", lambda k: k.jacobi_sweep(u, r, out1, True)),
        ("shrink", lambda k: k.shrink(zx, zy, g, 0.1, out1, out2)),
        ("bregman_update", lambda k: k.bregman_update(out1, out2, zx, zy,
                                                      u, f, 0.01)),
        ("residual", lambda k: k.residual(f, 0.8, 0.1, out3)),
        ("region_sums", lambda k: k.region_sums(f, u, 0.5)),
        ("energy_value", lambda k: k.energy_value(u, g, r, 1.0)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--height", type=int, default=640)
    ap.add_argument("--width", type=int, default=800)
    ap.add_argument("--repeats", type=int, default=7)
    args = ap.parse_args()

    if _kernels is None:
        print("compiled extension not built; nothing to compare "
              "(pip install -e . --no-build-isolation)")
        return 1

    h, w = args.height, args.width
    print(f"field size {w}x{h}, best of {args.repeats} runs\n")
    print(f"{'kernel':<16}{'numpy':>12}{'compiled':>12}{'speedup':>10}")
    for name, call in kernel_cases(h, w):
        t_np = best_of(lambda: call(_kernels_py), args.repeats)
        t_cy = best_of(lambda: call(_kernels), args.repeats)
        print(f"{name:<16}{t_np * 1e3:>10.2f}ms{t_cy * 1e3:>10.2f}ms"
              f"{t_np / t_cy:>9.1f}x")

    print("\nend-to-end segment(), 256x256 noisy disk:")
    f = make_synthetic("disk", 256, 0.15, 3)
    current = backend.name()
    times = {}
    try:
        for name in ("numpy", "compiled"):
            backend.use(name)
            times[name] = best_of(
                lambda: solver.segment(f, SolverParams(lam=2.0)),
                max(args.repeats // 2, 1))
    finally:
        backend.use(current)
    print(f"{'segment':<16}{times['numpy'] * 1e3:>10.1f}ms"
          f"{times['compiled'] * 1e3:>10.1f}ms"
          f"{times['numpy'] / times['compiled']:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
