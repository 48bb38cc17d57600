"""Compare the compiled kernels with the numpy/pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from mobrec import _pykernels

try:
    from mobrec import _kernels
except ImportError:
    _kernels = None


def _spf(mod):
    return mod.spf_sieve(2_000_000)


def _edges(mod):
    # G(2,1,1,0) on [1, 200000]
    return mod.window_edges(2, 1, 1, 0, 1, 200_000, 1, 200_001)


def _padic(mod):
    return mod.padic_colors(3, 2, 1, 1_000_000)


def _additive(mod):
    spf = _pykernels.spf_sieve(300_000)
    vals = np.zeros(len(spf), dtype=np.int64)
    vals[2] = 1
    return mod.additive_table(spf, vals, 2)


CASES = [("spf_sieve(2e6)", _spf), ("window_edges(2e5)", _edges),
         ("padic_colors(1e6)", _padic), ("additive_table(3e5)", _additive)]


def best_of(fn, mod, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(mod)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':<22}{'compiled [s]':>14}{'fallback [s]':>14}{'speedup':>10}")
    for name, fn in CASES:
        slow = best_of(fn, _pykernels, args.repeat)
        if _kernels is None:
            print(f"{name:<22}{'-':>14}{slow:>14.4f}{'-':>10}")
            continue
        fast = best_of(fn, _kernels, args.repeat)
        a, b = fn(_kernels), fn(_pykernels)
        same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
        print(f"{name:<22}{fast:>14.4f}{slow:>14.4f}{slow / fast:>9.1f}x{'' if same else '  MISMATCH'}")


if __name__ == "__main__":
    main()
