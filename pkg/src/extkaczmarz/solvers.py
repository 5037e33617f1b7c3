"""Plain and extended Kaczmarz iterations.

One iteration of the extended method is a column step on ``y`` followed by a
row step on ``x`` against the corrected right-hand side ``b_hat - y``::

    j_k = select column
    y^k = y^{k-1} - alpha <y^{k-1}, A^j> / ||A^j||^2 A^j
    b_hat^k = b_hat - y^k
    i_k = select row
    x^k = x^{k-1} - omega (<A_i, x^{k-1}> - b_hat^k_i) / ||A_i||^2 A_i

With ``y^0 = b_hat`` the vectors ``y^k`` converge to the component ``r`` of
``b_hat`` orthogonal to the range of ``A`` and ``x^k`` to a least-squares
solution.  The control strategy decides which method this is: weighted random
(REK), maximal residual (MREK) or almost cyclic (ACEK).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol

import numpy as np

from .control import AlmostCyclic, Cyclic, ControlSpec, MaxResidual, WeightedRandom, make_selector
from .core import ContractError, DenseMatrix, Problem, RelaxationParams, normalize_columns


class Variant(str, Enum):
    PLAIN = "plain"
    EXTENDED = "extended"


class StopReason(str, Enum):
    BUDGET = "budget"
    CONVERGED = "converged"


@dataclass(frozen=True)
class SolverConfig:
    """Run parameters.

    ``normalize_columns_internally`` defaults to on for maximal-residual
    control and off otherwise.  When on, the column phase works with
    unit-norm columns; the row phase always uses the rows of ``A`` as given,
    so no back-mapping of ``x`` is needed.

    Early stopping is disabled while both tolerances are zero.
    """

    variant: Variant = Variant.EXTENDED
    control: ControlSpec = field(default_factory=Cyclic)
    relax: RelaxationParams = field(default_factory=RelaxationParams)
    k_max: int = 1000
    tol_residual: float = 0.0
    tol_column: float = 0.0
    normalize_columns_internally: Optional[bool] = None
    assume_unit_columns: bool = False

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if int(self.k_max) < 1:
            raise ValueError(f"k_max must be at least 1, got {self.k_max}")
        object.__setattr__(self, "k_max", int(self.k_max))
        if self.tol_residual < 0 or self.tol_column < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.normalize_columns_internally is None:
            object.__setattr__(self, "normalize_columns_internally",
                               isinstance(self.control, MaxResidual))

    @property
    def early_stop(self) -> bool:
        return self.tol_residual > 0 or self.tol_column > 0


@dataclass
class RunResult:
    final_x: np.ndarray
    final_y: Optional[np.ndarray]
    iterations_used: int
    stop_reason: StopReason
    history: list = field(default_factory=list)


class StepObserver(Protocol):
    def step(self, k: int, j: Optional[int], i: int, x_prev: np.ndarray, x: np.ndarray,
             y: Optional[np.ndarray], b_hat_k: np.ndarray) -> None: ...


def row_update(A: DenseMatrix, x, rhs, i: int, omega: float = 1.0) -> np.ndarray:
    """Relaxed projection of ``x`` onto the hyperplane ``<A_i, x> = rhs_i``."""
    a = A.data[i]
    return x - (omega * (a @ x - rhs[i]) / A.row_norms[i] ** 2) * a


def column_update(A: DenseMatrix, y, j: int, alpha: float = 1.0,
                  normalized: bool = False) -> np.ndarray:
    """Relaxed removal of the component of ``y`` along column ``j``.

    ``normalized=True`` applies the unit-column form ``y - alpha <y, A^j> A^j``
    and requires ``||A^j|| = 1``.
    """
    a = A.data[:, j]
    c = a @ y
    if normalized:
        if abs(A.col_norms[j] - 1.0) > 1e-10:
            raise ContractError(f"column {j} has norm {A.col_norms[j]!r}, expected 1")
        return y - (alpha * c) * a
    return y - (alpha * c / A.col_norms[j] ** 2) * a


def rhs_correction(b_hat, y) -> np.ndarray:
    b_hat = np.asarray(b_hat)
    y = np.asarray(y)
    if b_hat.shape != y.shape:
        raise ValueError("b_hat and y differ in length")
    return b_hat - y


def _initial_x(problem: Problem, x0) -> np.ndarray:
    if x0 is None:
        return np.zeros(problem.n)
    x = np.array(x0, dtype=np.float64).ravel()
    if x.shape != (problem.n,):
        raise ValueError(f"x0 has length {x.size}, expected {problem.n}")
    return x


def run_kaczmarz(problem: Problem, config: SolverConfig, x0=None,
                 observer: Optional[StepObserver] = None) -> RunResult:
    """Plain relaxed Kaczmarz against the uncorrected ``b_hat``.

    One iteration is a single row step.  With tolerances set, the run stops
    once every row residual is within ``tol_residual``.
    """
    if config.variant is not Variant.PLAIN:
        raise ContractError("run_kaczmarz needs variant=PLAIN")
    A, b = problem.A, problem.b_hat
    omega = config.relax.omega
    selector = make_selector(config.control, A)
    x = _initial_x(problem, x0)
    res = A.data @ x - b
    reason = StopReason.BUDGET
    k = 0
    for k in range(1, config.k_max + 1):
        i = selector.row(k, res if selector.needs_vectors else None)
        x_prev = x
        x = row_update(A, x, b, i, omega)
        if observer is not None:
            observer.step(k, None, i, x_prev, x, None, b)
        if selector.needs_vectors or config.early_stop:
            res = A.data @ x - b
            if config.tol_residual > 0 and np.max(np.abs(res)) <= config.tol_residual:
                reason = StopReason.CONVERGED
                break
    return RunResult(x, None, k, reason, _history(observer))


def _column_matrix(A: DenseMatrix, config: SolverConfig) -> tuple[DenseMatrix, bool]:
    if config.normalize_columns_internally:
        return normalize_columns(A)[0], True
    if isinstance(config.control, MaxResidual):
        if not (config.assume_unit_columns or A.has_unit_columns()):
            raise ContractError(
                "maximal-residual control uses the unit-column update; enable "
                "normalize_columns_internally or pass a matrix with unit columns"
            )
        return A, True
    return A, False


def run_extended(problem: Problem, config: SolverConfig, x0=None,
                 observer: Optional[StepObserver] = None) -> RunResult:
    """Single-projection extended Kaczmarz with ``y^0 = b_hat``.

    Early stopping (when enabled) requires both
    ``max_j |<y, A^j>| / ||A^j|| <= tol_column`` and
    ``max_i |<A_i, x> - b_hat^k_i| <= tol_residual``.
    """
    if config.variant is not Variant.EXTENDED:
        raise ContractError("run_extended needs variant=EXTENDED")
    A, b = problem.A, problem.b_hat
    C, unit = _column_matrix(A, config)
    alpha, omega = config.relax.alpha, config.relax.omega
    selector = make_selector(config.control, A)
    need = selector.needs_vectors
    col_scale = 1.0 / C.col_norms

    x = _initial_x(problem, x0)
    y = b.copy()
    corr = C.data.T @ y
    reason = StopReason.BUDGET
    k = 0
    for k in range(1, config.k_max + 1):
        j = selector.column(k, corr if need else None)
        y = column_update(C, y, j, alpha, normalized=unit)
        bk = b - y
        i = selector.row(k, (A.data @ x - bk) if need else None)
        x_prev = x
        x = row_update(A, x, bk, i, omega)
        if observer is not None:
            observer.step(k, j, i, x_prev, x, y, bk)
        if need or config.early_stop:
            corr = C.data.T @ y
        if config.early_stop:
            col_ok = np.max(np.abs(corr) * col_scale) <= config.tol_column
            if col_ok and np.max(np.abs(A.data @ x - bk)) <= config.tol_residual:
                reason = StopReason.CONVERGED
                break
    return RunResult(x, y, k, reason, _history(observer))


def minimum_norm_mode(problem: Problem, config: SolverConfig,
                      observer: Optional[StepObserver] = None) -> RunResult:
    """Run from ``x^0 = 0`` so that every iterate stays in the row space of ``A``.

    The limit is then the minimum-norm least-squares solution.
    """
    if config.variant is Variant.PLAIN:
        return run_kaczmarz(problem, config, np.zeros(problem.n), observer)
    return run_extended(problem, config, np.zeros(problem.n), observer)


def run(problem: Problem, config: SolverConfig, x0=None,
        observer: Optional[StepObserver] = None) -> RunResult:
    if config.variant is Variant.PLAIN:
        return run_kaczmarz(problem, config, x0, observer)
    return run_extended(problem, config, x0, observer)


def _history(observer) -> list:
    return list(getattr(observer, "records", []))


# named presets: "k", "ek", "rek", "mrek", "acek"
def preset(name: str, control: Optional[ControlSpec] = None, **kwargs) -> SolverConfig:
    name = name.lower()
    if name == "k":
        return SolverConfig(Variant.PLAIN, control or WeightedRandom(), **kwargs)
    if name == "ek":
        return SolverConfig(Variant.EXTENDED, control or Cyclic(), **kwargs)
    if name == "rek":
        return SolverConfig(Variant.EXTENDED, control or WeightedRandom(), **kwargs)
    if name == "mrek":
        return SolverConfig(Variant.EXTENDED, control or MaxResidual(), **kwargs)
    if name == "acek":
        if control is not None and not isinstance(control, (AlmostCyclic, Cyclic)):
            raise ValueError("acek needs cyclic or almost-cyclic control")
        return SolverConfig(Variant.EXTENDED, control or Cyclic(), **kwargs)
    raise ValueError(f"unknown variant {name!r}; expected one of k, ek, rek, mrek, acek")


__all__ = [
    "Variant", "StopReason", "SolverConfig", "RunResult", "row_update", "column_update",
    "rhs_correction", "run_kaczmarz", "run_extended", "minimum_norm_mode", "run", "preset",
]
