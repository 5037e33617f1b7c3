"""Kaczmarz and extended Kaczmarz solvers for inconsistent least-squares problems."""
from .control import (AlmostCyclic, Cyclic, IndexDistribution, MaxResidual, WeightedRandom,
                      build_distributions, cyclic_next, max_correlation_col, max_residual_row,
                      sample_index, validate_almost_cyclic)
from .core import (ContractError, DenseMatrix, Problem, ProblemMeta, RelaxationParams,
                   SolverState, column_correlation, normalize_columns, row_residual)
from .diagnostics import BoundKind, BoundReport, Recorder, verify_run
from .oracle import (OracleSolution, acek_rate, distance_to_lss, mrek_rate, noise_radius,
                     rek_bound, solve)
from .problems import GeneratorSpec, example_p1, generate
from .solvers import (RunResult, SolverConfig, StopReason, Variant, column_update,
                      minimum_norm_mode, preset, rhs_correction, row_update, run, run_extended,
                      run_kaczmarz)

__version__ = "0.1.0"

__all__ = [
    "AlmostCyclic", "Cyclic", "IndexDistribution", "MaxResidual", "WeightedRandom",
    "build_distributions", "cyclic_next", "max_correlation_col", "max_residual_row",
    "sample_index", "validate_almost_cyclic",
    "ContractError", "DenseMatrix", "Problem", "ProblemMeta", "RelaxationParams", "SolverState",
    "column_correlation", "normalize_columns", "row_residual",
    "BoundKind", "BoundReport", "Recorder", "verify_run",
    "OracleSolution", "acek_rate", "distance_to_lss", "noise_radius", "rek_bound", "mrek_rate", "solve",
    "GeneratorSpec", "example_p1", "generate",
    "RunResult", "SolverConfig", "StopReason", "Variant", "column_update", "minimum_norm_mode",
    "preset", "rhs_correction", "row_update", "run", "run_extended", "run_kaczmarz",
]
