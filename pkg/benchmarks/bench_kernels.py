#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the numpy fallback.

Runs each hot kernel on representative workloads and prints a timing table.
Works with or without the compiled extension (single-column output when it is
missing). Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from paretoscope import kernels
from paretoscope.mimo import MimoParams

PRM = MimoParams()
ARGS = (
    PRM.B, PRM.sigma2, PRM.A, PRM.Lambda1, PRM.Lambda2,
    PRM.Upsilon, PRM.eta, PRM.C_N, PRM.C_K, PRM.C_0, PRM.L_eff,
)


def feasible_points(n, seed=0):
    rng = np.random.default_rng(seed)
    K = rng.integers(1, 251, n).astype(np.float64)
    N = np.minimum(2 * K + rng.integers(0, 200, n), 500).astype(np.float64)
    P = rng.uniform(0.0, N * 20.0)
    return K, N, P


def bench(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def ee_scan(impl, k_cap, n_power):
    """The hot loop of the EE optimization: full (K, N, P) table scan."""
    n_vals = np.arange(2.0, PRM.N_max + 1.0)
    p_vals = np.concatenate(([0.0], np.logspace(-3, 4, n_power - 1)))
    best = -1.0
    for k in range(1, k_cap + 1):
        ns = n_vals[n_vals >= 2.0 * k]
        N, P = np.meshgrid(ns, p_vals, indexing="ij")
        feas = P <= N * PRM.P_max
        Kc = np.full(int(feas.sum()), float(k))
        table = impl.mimo_objective_table(Kc, N[feas], P[feas], *ARGS)
        best = max(best, float(table[:, 2].max()))
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    opts = parser.parse_args()

    impls = kernels.implementations()
    print(f"active backend: {kernels.backend()}; comparing: {', '.join(impls)}")

    scale = 0.2 if opts.quick else 1.0
    n_table = int(2_000_000 * scale)
    n_pareto = int(20_000 * scale)
    k_cap = int(100 * scale) or 20

    K, N, P = feasible_points(n_table)
    rng = np.random.default_rng(3)
    cloud = rng.random((n_pareto, 3))

    workloads = [
        (f"objective table, {n_table:,} points",
         lambda impl: impl.mimo_objective_table(K, N, P, *ARGS)),
        (f"pareto survivor mask, {n_pareto:,} x 3",
         lambda impl: impl.pareto_survivor_mask(cloud)),
        (f"EE grid scan, K<=  {k_cap}, 101 power points",
         lambda impl: ee_scan(impl, k_cap, 101)),
    ]

    header = f"{'workload':<42}" + "".join(f"{name:>12}" for name in impls)
    if len(impls) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, work in workloads:
        times = {name: bench(lambda impl=impl: work(impl)) for name, impl in impls.items()}
        row = f"{label:<42}" + "".join(f"{times[name] * 1e3:>10.1f}ms" for name in impls)
        if len(times) == 2:
            row += f"{times['fallback'] / times['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
