#!/usr/bin/env python3
"""
Benchmark: numba-compiled kernels vs the vectorized numpy fallback.

Times normalization, influence propagation and a full solve on random
problems of growing size and prints the median per-call time and speedup.

    python benchmarks/bench_kernels.py [--repeat 20]
"""
import argparse
import time
import warnings

import numpy as np

from greygraph import Attribute, DecisionProblem, GreyArray, GreyDataWarning, solve
from greygraph import _kernels


def random_problem(n, m, rng):
    lo = rng.uniform(0, 100, size=(n, m))
    hi = lo + rng.uniform(0, 20, size=(n, m))
    w = rng.dirichlet(np.ones(m))
    attrs = [Attribute(f"A{j}", "cost" if j % 3 == 0 else "benefit", (w[j], 0.05)) for j in range(m)]
    xk = rng.uniform(0, 0.3, size=(m, m))
    xk = np.triu(xk, 1) + np.triu(xk, 1).T + np.eye(m)
    xg = rng.uniform(0, 0.2, size=(m, m))
    xg = np.triu(xg, 1) + np.triu(xg, 1).T
    return DecisionProblem([f"X{i}" for i in range(n)], attrs, lo, hi, GreyArray(xk, xg))


def median_time(fn, repeat):
    fn()  # warmup / compile
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def main():
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--sizes", default="10x5,200x20,2000x40,5000x80")
    args = parser.parse_args()
    if "numba" not in _kernels.BACKENDS:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(7)
    print(f"{'size':>10} {'stage':>10} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for spec in args.sizes.split(","):
        n, m = (int(x) for x in spec.split("x"))
        problem = random_problem(n, m, rng)
        k = problem.lower / 100
        g = (problem.upper - problem.lower) / 100
        stages = {
            "normalize": lambda be: _kernels.normalize(problem.lower, problem.upper, problem.is_cost, be),
            "propagate": lambda be: _kernels.grey_matmul(
                k, g, problem.influence.kernel, problem.influence.greyness, True, be
            ),
            "solve": lambda be: solve(problem, backend=be),
        }
        for stage, fn in stages.items():
            t_np = median_time(lambda: fn("numpy"), args.repeat)
            t_nb = median_time(lambda: fn("numba"), args.repeat)
            print(f"{spec:>10} {stage:>10} {t_np * 1e3:10.3f} {t_nb * 1e3:10.3f} {t_np / t_nb:8.2f}")


if __name__ == "__main__":
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GreyDataWarning)
        main()
