"""Where does the time go?  Row reduction versus everything else.

    python benchmarks/bench_kernel.py [--trials N]

Prints the share of a riemann-roch suite run spent inside the row-reduction
kernel.  This is the number that decides whether a compiled kernel pays off.
"""
import argparse
import cProfile
import pstats
import random
import time

from gendiv import _kernel_py
from gendiv.cli.props import run_suite
from gendiv.qlinalg import KERNEL, scalar


def bench_rref(n=12, reps=200, seed=0):
    rng = random.Random(seed)
    mats = [[[scalar(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n - 2)] for _ in range(reps)]
    t0 = time.perf_counter()
    for m in mats:
        _kernel_py.rref(m, n)
    return (time.perf_counter() - t0) / reps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=50)
    args = ap.parse_args()
    print("kernel in use: %s" % KERNEL)
    print("rref 10x12 (pure python): %.1f us" % (1e6 * bench_rref()))
    prof = cProfile.Profile()
    t0 = time.perf_counter()
    prof.enable()
    run_suite("riemann-roch", args.trials, seed=1)
    prof.disable()
    total = time.perf_counter() - t0
    st = pstats.Stats(prof)
    kern = sum(v[3] for k, v in st.stats.items() if k[0].endswith("_kernel_py.py") and k[2] == "rref")
    print("riemann-roch suite, %d trials: %.2f s (profiled)" % (args.trials, total))
    print("time inside rref: %.2f s (%.0f%%)" % (kern, 100 * kern / total))


if __name__ == "__main__":
    main()
