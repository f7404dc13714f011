"""Compare the compiled projection kernel against the numpy fallback.

Times the one-sided boundary reduction (the package hot path) on synthetic
direction/normal sets of increasing size and checks the two backends agree.

Run:  python3 benchmarks/bench_kernels.py [--sizes 2000,4000,8000]
"""

import argparse
import time

import numpy as np

from affinecap.kernels import _py

try:
    from affinecap.kernels import _speed
except ImportError:
    _speed = None


def _unit_rows(m, n, rng):
    v = rng.standard_normal((m, n))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def bench(size, p, repeats=3):
    rng = np.random.default_rng(0)
    thetas = _unit_rows(size, 3, rng)
    normals = _unit_rows(size, 3, rng)
    weights = rng.uniform(0.5, 1.5, size) / size

    rows = []
    for label, mod in (("python", _py), ("compiled", _speed)):
        if mod is None:
            continue
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            ip, im = mod.projection_parts(thetas, normals, weights, p)
            best = min(best, time.perf_counter() - t0)
        rows.append((label, best, ip, im))

    ref = rows[0]
    for label, secs, ip, im in rows:
        agree = max(
            np.max(np.abs(ip - ref[2])) / np.max(ip),
            np.max(np.abs(im - ref[3])) / np.max(im),
        )
        speedup = ref[1] / secs
        print(
            f"  {label:>8}: {secs * 1e3:8.1f} ms  "
            f"(x{speedup:5.2f} vs python, rel dev {agree:.1e})"
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="2000,4000,8000")
    parser.add_argument("--p", type=float, nargs="*", default=[1.5, 2.0])
    args = parser.parse_args()

    if _speed is None:
        print("compiled kernel not built; timing the fallback only")
    for size in (int(s) for s in args.sizes.split(",")):
        for p in args.p:
            print(f"size={size} p={p}")
            bench(size, p)


if __name__ == "__main__":
    main()
