"""
Checking the convergence theory on a run
========================================

``verify_run`` records every iterate and evaluates the identities and bounds
the convergence proofs rely on.  The distance to any least-squares solution
is quasi-Fejer monotone.  The perturbations ``||gamma_i||^2`` are summable
and ``y^k`` converges to ``r``.  For randomized extended Kaczmarz the
expected error bound is checked by Monte Carlo.
"""

from extkaczmarz import GeneratorSpec, RelaxationParams, example_p1, generate, preset, verify_run
from extkaczmarz.diagnostics import check_rek_expectation

problem = generate(GeneratorSpec(m=15, n=6, rank=4, cond=2.0, noise=0.5, seed=2)).problem

for name in ("mrek", "acek"):
    _, reports = verify_run(problem, preset(name, k_max=3000))
    print(f"-- {name}")
    for rep in reports:
        print("  ", rep.to_line())

###############################################################################
# Relaxation changes the shape of the one-step identity.  The check uses the
# exact form valid for any ``omega`` in (0, 2).

_, reports = verify_run(problem, preset("mrek", relax=RelaxationParams(1.0, 1.8), k_max=3000),
                        checks=["fejer", "cauchy", "sequence"])
for rep in reports:
    print("  ", rep.to_line())

print(check_rek_expectation(example_p1(), trials=100).to_line())
