"""
Plain Kaczmarz stalls on an inconsistent system
================================================

The three equations ``x1 = 1``, ``x2 = 1`` and ``x1 + x2 = 1`` have no
common solution.  Their least-squares solution is ``(2/3, 2/3)``.  Plain
randomized Kaczmarz keeps jumping between the three lines and never settles
there.  The extended method also removes the part of the right-hand side that
lies outside the range of ``A``, so it converges.
"""

import numpy as np

from extkaczmarz import (SolverConfig, Variant, WeightedRandom, example_p1, noise_radius, preset,
                         run_extended, run_kaczmarz, solve)

problem = example_p1()
oracle = solve(problem.A, problem.b_hat)
print("least-squares solution:", oracle.x_ls_min_norm)
print("residual component r:  ", oracle.r)

###############################################################################
# Plain randomized Kaczmarz, rows sampled with probability proportional to
# their squared norms.  The mean error stays at the scale of the noise radius.

radius = noise_radius(oracle, problem.A)
errors = []
for seed in range(50):
    cfg = SolverConfig(Variant.PLAIN, WeightedRandom(seed), k_max=2000)
    x = run_kaczmarz(problem, cfg).final_x
    errors.append(np.linalg.norm(x - oracle.x_ls_min_norm))
print(f"plain:    mean error {np.mean(errors):.3f}, noise radius {radius:.3f}")

###############################################################################
# The extended variants run the same row steps on a corrected right-hand side
# ``b_hat - y``.  Here ``y`` is driven to ``r`` by column projections.

for name in ("rek", "mrek", "acek"):
    res = run_extended(problem, preset(name, k_max=2000))
    err = np.linalg.norm(res.final_x - oracle.x_ls_min_norm)
    print(f"{name:>8}: error {err:.1e} after {res.iterations_used} iterations")
