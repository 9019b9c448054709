"""Time the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--limit N] [--repeat R]
"""

import argparse
import math
import time

import numpy as np

from cubictwist import _pykernels
from cubictwist.lfunctions import prime_tables

try:
    from cubictwist import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _time(fn, repeat):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=300_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--D", type=int, default=1001)
    args = ap.parse_args(argv)

    t = prime_tables(args.limit)
    tabs = (t.spf, t.split_p, t.split_r, t.split_tr)
    scale = 2 * math.pi / math.sqrt(27 * args.D**2)
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])

    results = {}
    print(f"limit={args.limit} D={args.D} repeat={args.repeat}")
    print(f"{'backend':8s} {'hecke_table (s)':>16s} {'smoothed_sum (s)':>17s}")
    for name, mod in backends:
        th, a = _time(lambda: mod.hecke_table(args.D, args.limit, *tabs), args.repeat)
        ts, s = _time(lambda: mod.smoothed_sum(a, scale, args.limit), args.repeat)
        results[name] = (th, ts, a, s)
        print(f"{name:8s} {th:16.4f} {ts:17.4f}")
    if len(results) == 2:
        (pth, pts, pa, ps), (cth, cts, ca, cs) = results["python"], results["cython"]
        same = bool(np.array_equal(pa, ca))
        diff = abs(ps[0] - cs[0])
        print(f"speedup: table x{pth / cth:.1f}, sum x{pts / cts:.1f}")
        print(f"tables identical: {same}; |sum difference| = {diff:.2e} (bound {ps[1] + cs[1]:.2e})")
    else:
        print("compiled kernels unavailable; only the pure-Python backend was timed")


if __name__ == "__main__":
    main()
