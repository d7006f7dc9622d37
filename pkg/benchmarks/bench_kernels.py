"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Each kernel runs on identical inputs in both backends; outputs are checked
for equality before timings are reported.
"""

import argparse
import time

import numpy as np

from golden_games._backend import available_backends
from golden_games.core import PHI

CASES = [
    # name, kernel, args
    ("sample_leaves depth 22", "sample_leaves", (7, 0, 22, PHI)),
    ("streamed_value depth 26", "streamed_value", (2024, 0, 26, PHI)),
    ("streamed_value depth 40 p=1", "streamed_value", (3, 0, 40, 1.0)),
    ("fragility_tally depth 12 x 5000", "fragility_tally", (1, 12, PHI, 0, 5000, 3)),
    ("fragility_tally depth 6 x 100000", "fragility_tally", (1, 6, PHI, 0, 100_000, 3)),
]


def best_of(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the numpy backend is available")
    names = sorted(backends)
    print(f"{'case':<34}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, kernel, kargs in CASES:
        times, outs = {}, {}
        for name in names:
            times[name], outs[name] = best_of(getattr(backends[name], kernel), kargs, args.repeat)
        ref = outs[names[0]]
        for name in names[1:]:
            assert np.array_equal(np.asarray(outs[name]), np.asarray(ref)), f"{label}: backends disagree"
        speedup = times["numpy"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:<34}" + "".join(f"{times[n] * 1e3:>10.1f}ms" for n in names) + f"{speedup:>9.1f}x")


if __name__ == "__main__":
    main()
