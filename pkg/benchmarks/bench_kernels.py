"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--six 200000]

Both backends are run on the same rank arrays and their outputs compared.
"""

import argparse
import time

import numpy as np

from thetanorm import kernels
from thetanorm.config_space import type_space


def arrays(t, n=None):
    ts = type_space(t)
    idx = np.arange(ts.N) if n is None or n >= ts.N else np.linspace(0, ts.N - 1, n).astype(np.int64)
    ix, iy = np.divmod(idx, ts.P)
    return ts.ranks[ix].astype(np.int64), ts.ranks[iy].astype(np.int64)


def best_of(fn, X, Y, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(X, Y)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--six", type=int, default=None, help="number of 6-tuple types (default all)")
    args = ap.parse_args()

    try:
        from thetanorm.kernels import _ckernels as compiled
    except ImportError:
        compiled = None
        print("compiled extension not built; timing the fallback only")
    fallback = kernels.fallback

    cases = [
        ("theta30 (all 5-tuples)", "theta30_batch", arrays(5)),
        ("theta120 (all 5-tuples)", "theta120_batch", arrays(5)),
        ("dtheta30 (6-tuples)", "dtheta30_batch", arrays(6, args.six)),
    ]
    print(f"{'kernel':26s} {'n':>9s} {'numpy s':>9s} {'cython s':>9s} {'speedup':>8s}")
    for label, name, (X, Y) in cases:
        tn, on = best_of(getattr(fallback, name), X, Y, args.repeat)
        if compiled is None:
            print(f"{label:26s} {len(X):9d} {tn:9.4f} {'-':>9s} {'-':>8s}")
            continue
        tc, oc = best_of(getattr(compiled, name), X, Y, args.repeat)
        assert np.array_equal(on, oc), f"{name}: backends disagree"
        print(f"{label:26s} {len(X):9d} {tn:9.4f} {tc:9.4f} {tn / tc:7.1f}x")


if __name__ == "__main__":
    main()
