"""Dense matrices, least-squares problems and the elementary row/column kernels.

Indices are 0-based throughout the Python API.  File formats that carry
indices (schedules, CSV histories) are 1-based and converted at the boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class ContractError(ValueError):
    """Raised when an operation is called outside its documented contract."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    """Row-major ``m x n`` real matrix with cached row and column norms.

    The entries are copied on construction and made read-only, so instances
    can be shared freely.
    """

    data: np.ndarray
    row_norms: np.ndarray = field(init=False, repr=False)
    col_norms: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        a = np.ascontiguousarray(np.atleast_2d(np.asarray(self.data, dtype=np.float64)))
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-d array, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix contains non-finite entries")
        object.__setattr__(self, "data", _frozen(a))
        object.__setattr__(self, "row_norms", _frozen(np.linalg.norm(a, axis=1)))
        object.__setattr__(self, "col_norms", _frozen(np.linalg.norm(a, axis=0)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def m(self) -> int:
        return self.data.shape[0]

    @property
    def n(self) -> int:
        return self.data.shape[1]

    @property
    def frobenius(self) -> float:
        return float(np.sqrt(np.sum(self.row_norms**2)))

    def row(self, i: int) -> np.ndarray:
        return self.data[_check_index(i, self.m, "row")]

    def col(self, j: int) -> np.ndarray:
        return self.data[:, _check_index(j, self.n, "column")]

    def has_unit_columns(self, tol: float = 1e-10) -> bool:
        return bool(np.all(np.abs(self.col_norms - 1.0) <= tol))


def as_matrix(A) -> DenseMatrix:
    return A if isinstance(A, DenseMatrix) else DenseMatrix(A)


def _check_index(idx: int, size: int, what: str) -> int:
    idx = int(idx)
    if not 0 <= idx < size:
        raise IndexError(f"{what} index {idx} out of range [0, {size})")
    return idx


@dataclass(frozen=True)
class ProblemMeta:
    """Ground truth attached to generated problems."""

    x_true: np.ndarray
    r_injected: np.ndarray


@dataclass(frozen=True, eq=False)
class Problem:
    """A least-squares problem ``min ||A x - b_hat||``.

    Zero rows and zero columns are rejected: every Kaczmarz step divides by a
    squared row or column norm.
    """

    A: DenseMatrix
    b_hat: np.ndarray
    meta: Optional[ProblemMeta] = None

    def __post_init__(self):
        A = as_matrix(self.A)
        object.__setattr__(self, "A", A)
        b = np.asarray(self.b_hat, dtype=np.float64).ravel()
        if b.shape != (A.m,):
            raise ValueError(f"b_hat has length {b.size}, expected {A.m}")
        object.__setattr__(self, "b_hat", _frozen(b))
        zero_rows = np.flatnonzero(A.row_norms == 0)
        if zero_rows.size:
            raise ContractError(f"zero row at index {int(zero_rows[0])}")
        zero_cols = np.flatnonzero(A.col_norms == 0)
        if zero_cols.size:
            raise ContractError(f"zero column at index {int(zero_cols[0])}")
        if self.meta is not None:
            x_true = _frozen(np.ravel(self.meta.x_true))
            r = _frozen(np.ravel(self.meta.r_injected))
            if x_true.shape != (A.n,) or r.shape != (A.m,):
                raise ValueError("meta vectors have wrong dimensions")
            corr = np.abs(A.data.T @ r)
            limit = 1e-10 * A.col_norms * np.linalg.norm(r)
            bad = np.flatnonzero(corr > limit)
            if bad.size:
                raise ContractError(
                    f"injected residual is not orthogonal to column {int(bad[0])}"
                )
            object.__setattr__(self, "meta", ProblemMeta(x_true, r))

    @property
    def m(self) -> int:
        return self.A.m

    @property
    def n(self) -> int:
        return self.A.n


@dataclass(frozen=True)
class RelaxationParams:
    """Column relaxation ``alpha`` and row relaxation ``omega``, both in (0, 2)."""

    alpha: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "omega"):
            v = float(getattr(self, name))
            if not 0.0 < v < 2.0:
                raise ValueError(f"{name}={v} must lie in the open interval (0, 2)")
            object.__setattr__(self, name, v)


@dataclass
class SolverState:
    """Mutable iterate of an extended Kaczmarz run."""

    k: int
    x: np.ndarray
    y: np.ndarray
    b_hat_k: np.ndarray


def normalize_columns(A) -> tuple[DenseMatrix, np.ndarray]:
    """Scale every column of ``A`` to unit Euclidean norm.

    Returns ``(A_unit, D)`` with ``A_unit = A @ diag(D)``.  A solution ``z``
    of the scaled problem corresponds to ``x = D * z`` for the original one.
    """
    A = as_matrix(A)
    zero = np.flatnonzero(A.col_norms == 0)
    if zero.size:
        raise ContractError(f"cannot normalize zero column at index {int(zero[0])}")
    D = 1.0 / A.col_norms
    return DenseMatrix(A.data * D), D


def row_residual(A: DenseMatrix, x, rhs, i: int) -> float:
    """``<A_i, x> - rhs_i``."""
    i = _check_index(i, A.m, "row")
    return float(A.data[i] @ x - rhs[i])


def column_correlation(A: DenseMatrix, y, j: int) -> float:
    """``<y, A^j>``."""
    j = _check_index(j, A.n, "column")
    return float(A.data[:, j] @ y)
