"""Compare the compiled and pure-Python isotropic search kernels.

Usage: python3 benchmarks/bench_kernels.py [--count N] [--max-n N] [--bound B]

Both backends run on the same seeded forms; results must agree exactly.
"""

import argparse
import random
import time

import numpy as np

from qtorus import kernels, oracle, selftest


def workload(count, max_n, seed=7):
    rng = random.Random(seed)
    cases = []
    for _ in range(count):
        n = rng.randint(2, max_n)
        m = rng.randint(1, 2)
        F = np.array([selftest.random_alternating(rng, n).tolist() for _ in range(m)], dtype=np.int64)
        cases.append((n, F))
    return cases


def run(backend, cases, bound):
    out, t = [], time.perf_counter()
    for n, F in cases:
        out.append(kernels.isotropic_search(oracle.box_vectors(n, bound), F, n, 10**8, backend=backend))
    return out, time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--bound", type=int, default=2)
    args = ap.parse_args()
    cases = workload(args.count, args.max_n)
    py, t_py = run("python", cases, args.bound)
    print(f"python    {t_py:8.3f}s")
    if not kernels.compiled_available():
        print("compiled  not built")
        return
    c, t_c = run("compiled", cases, args.bound)
    print(f"compiled  {t_c:8.3f}s  speedup {t_py / t_c:6.1f}x  identical={py == c}")


if __name__ == "__main__":
    main()
