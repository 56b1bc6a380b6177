"""Compare the compiled and pure-Python 4-connectivity kernels.

    python benchmarks/bench_label.py [--sizes 64 128 256] [--repeat 5]
"""

import argparse
import time

import numpy as np

from crosstopo import _pykernels

try:
    from crosstopo import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, mask, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(mask)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    ap.add_argument("--density", type=float, default=0.6)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'N':>6} {'python ms':>11} {'cython ms':>11} {'speedup':>8}  components")
    for n in args.sizes:
        mask = rng.random((n, n)) < args.density
        py = best_of(_pykernels.label4, mask, args.repeat)
        count = _pykernels.label4(mask)[1]
        if _ckernels is None:
            print(f"{n:>6} {py * 1e3:>11.2f} {'n/a':>11} {'n/a':>8}  {count}")
            continue
        cy = best_of(_ckernels.label4, mask, args.repeat)
        assert _ckernels.label4(mask)[1] == count
        print(f"{n:>6} {py * 1e3:>11.2f} {cy * 1e3:>11.2f} {py / cy:>7.1f}x  {count}")


if __name__ == "__main__":
    main()
