"""
Almost-cyclic schedules
=======================

An almost-cyclic schedule visits every index at least once in every window
of a fixed length.  Cyclic sweeps are the simplest case.  Below, random
permutation blocks padded with an occasional repeat make a schedule with
window ``2 * size``.  ACEK converges with it just as with the plain sweep.
"""

import numpy as np

from extkaczmarz import (AlmostCyclic, GeneratorSpec, acek_rate, generate, preset, run_extended,
                         solve, validate_almost_cyclic)
from extkaczmarz.oracle import distance_to_lss

rng = np.random.default_rng(1)
problem = generate(GeneratorSpec(m=20, n=8, rank=6, cond=3.0, noise=1.0, seed=4)).problem
oracle = solve(problem.A, problem.b_hat)


def blocks(size, count=3):
    seq = []
    for _ in range(count):
        seq += list(rng.permutation(size))
        if rng.random() < 0.5:
            seq.append(int(rng.integers(size)))
    return tuple(int(v) for v in seq)


rows, cols = blocks(problem.m), blocks(problem.n)
print(validate_almost_cyclic(cols, problem.n, 2 * problem.n))
print(validate_almost_cyclic(cols, problem.n, problem.n // 2))

###############################################################################
# Worst contraction of ``||y - r||`` over any window of column steps.  Smaller
# is faster.  The cyclic value uses windows of ``n`` steps.

print("cyclic rate:       ", acek_rate(problem.A, range(problem.n), problem.n, 1.0, oracle))
print("almost-cyclic rate:", acek_rate(problem.A, cols, 2 * problem.n, 1.0, oracle))

for label, control in (("cyclic", None),
                       ("almost-cyclic", AlmostCyclic(rows, cols, 2 * problem.m, 2 * problem.n))):
    res = run_extended(problem, preset("acek", control, k_max=50_000, tol_residual=1e-12,
                                       tol_column=1e-12))
    d = distance_to_lss(oracle, problem.A, res.final_x)
    print(f"{label:>14}: {res.iterations_used} iterations, distance to LSS {d:.1e}")
