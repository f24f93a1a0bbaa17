"""Timing comparison of the compiled kernels against the pure-Python
fallback.

The package selects a backend at import time, so the two are compared
by loading the modules directly rather than via environment re-exec:
``_core`` is the Cython extension, ``_fallback`` the reference
implementation.  Run as

    python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 5]

Times are best-of-``repeat`` wall clock for one call over an n-point
array (nll/score reduce, the others return arrays).
"""

import argparse
import time

import numpy as np

from ngfisk._kernels import _fallback

try:
    from ngfisk._kernels import _core
except ImportError:
    _core = None

PARAMS = (1.5, 2.0, 2.5, 0.25)  # alpha, beta, theta, delta


def best_time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    x = _fallback.quantile(rng.random(args.n), *PARAMS)
    p = rng.random(args.n)

    cases = [
        ("nll", (x, *PARAMS)),
        ("score", (x, *PARAMS)),
        ("cdf", (x, *PARAMS)),
        ("pdf", (x, *PARAMS)),
        ("hazard", (x, *PARAMS)),
        ("quantile", (p, *PARAMS)),
    ]

    def fmt(seconds):
        if seconds < 1e-3:
            return f"{seconds*1e6:.1f}us"
        return f"{seconds*1e3:.2f}ms"

    print(f"n = {args.n}, best of {args.repeat}")
    header = f"{'kernel':<10} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, call_args in cases:
        t_py = best_time(getattr(_fallback, name), call_args, args.repeat)
        if _core is None:
            print(f"{name:<10} {fmt(t_py):>12} {'(absent)':>12} {'':>9}")
            continue
        t_c = best_time(getattr(_core, name), call_args, args.repeat)
        print(f"{name:<10} {fmt(t_py):>12} {fmt(t_c):>12} {t_py/t_c:>8.1f}x")

    if _core is not None:
        v_py = _fallback.nll(x, *PARAMS)
        v_c = _core.nll(x, *PARAMS)
        print(f"\nnll agreement: |python - compiled| = {abs(v_py - v_c):.3e}")


if __name__ == "__main__":
    main()
