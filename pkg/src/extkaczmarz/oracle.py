"""Exact reference quantities from a full singular value decomposition."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import as_matrix, normalize_columns

MAX_ORACLE_DIM = 5000


@dataclass(frozen=True, eq=False)
class OracleSolution:
    x_ls_min_norm: np.ndarray
    r: np.ndarray
    b_clean: np.ndarray
    sigma: np.ndarray
    rank: int
    delta: float
    delta_unit: float
    cond_k: float
    cond_k_hat: float
    U: np.ndarray  # orthonormal basis of R(A), m x rank
    V: np.ndarray  # orthonormal basis of R(A^T), n x rank

    @property
    def x_ls_norm(self) -> float:
        return float(np.linalg.norm(self.x_ls_min_norm))

    def project_range(self, v) -> np.ndarray:
        """Orthogonal projection onto R(A)."""
        return self.U @ (self.U.T @ v)

    def project_row_space(self, v) -> np.ndarray:
        """Orthogonal projection onto R(A^T)."""
        return self.V @ (self.V.T @ v)


def _svd_rank(a: np.ndarray):
    U, s, Vt = np.linalg.svd(a, full_matrices=False)
    eps = 1e-12 * max(a.shape)
    rank = int(np.sum(s > eps * s[0])) if s.size and s[0] > 0 else 0
    return U[:, :rank], s[:rank], Vt[:rank].T, rank


def solve(A, b_hat) -> OracleSolution:
    """Minimum-norm least-squares solution and the decomposition ``b_hat = b + r``.

    Singular values below ``1e-12 * max(m, n) * sigma_1`` are treated as zero.
    """
    A = as_matrix(A)
    if max(A.shape) > MAX_ORACLE_DIM:
        raise ValueError(f"oracle limited to m, n <= {MAX_ORACLE_DIM}, got {A.shape}")
    b_hat = np.asarray(b_hat, dtype=np.float64).ravel()
    if b_hat.shape != (A.m,):
        raise ValueError(f"b_hat has length {b_hat.size}, expected {A.m}")
    U, s, V, rank = _svd_rank(A.data)
    if rank == 0:
        raise ValueError("matrix has rank 0")
    coef = U.T @ b_hat
    x_ls = V @ (coef / s)
    b_clean = U @ coef
    r = b_hat - b_clean
    # the projection of r onto R(A) is roundoff; remove it so r is in N(A^T) to working precision
    r = r - U @ (U.T @ r)
    unit_cols = A.col_norms > 0
    if np.all(unit_cols):
        s_unit = np.linalg.svd(normalize_columns(A)[0].data, compute_uv=False)
        delta_unit = float(s_unit[rank - 1])
    else:
        delta_unit = float("nan")
    return OracleSolution(
        x_ls_min_norm=x_ls,
        r=r,
        b_clean=b_clean,
        sigma=s,
        rank=rank,
        delta=float(s[-1]),
        delta_unit=delta_unit,
        cond_k=float(s[0] / s[-1]),
        cond_k_hat=float(A.frobenius / s[-1]),
        U=U,
        V=V,
    )


def distance_to_lss(oracle: OracleSolution, A, x) -> float:
    """Euclidean distance from ``x`` to the affine set ``x_LS + N(A)``."""
    A = as_matrix(A)
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.shape != (A.n,) or oracle.V.shape[0] != A.n:
        raise ValueError("dimension mismatch between oracle, matrix and x")
    return float(np.linalg.norm(oracle.V.T @ (x - oracle.x_ls_min_norm)))


def noise_radius(oracle: OracleSolution, A) -> float:
    """Radius ``k_hat(A) * max_i |r_i| / ||A_i||`` of the ball plain randomized Kaczmarz settles in."""
    A = as_matrix(A)
    return float(oracle.cond_k_hat * np.max(np.abs(oracle.r) / A.row_norms))


def rek_bound(oracle: OracleSolution, x_ls_norm: float, k: int) -> float:
    """Expected squared-error bound of randomized extended Kaczmarz after ``k`` iterations."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    factor = 1.0 - 1.0 / oracle.cond_k_hat**2
    return factor ** (k // 2) * (1.0 + 2.0 * oracle.cond_k**2) * x_ls_norm**2


def mrek_rate(oracle_unit_columns: OracleSolution, alpha: float, n: int) -> float:
    """Per-iteration contraction ``gamma`` of ``||y^k - r||`` under maximal-residual control.

    ``oracle_unit_columns`` must be computed on the column-normalized matrix.
    """
    if not 0.0 < alpha < 2.0:
        raise ValueError(f"alpha={alpha} must lie in (0, 2)")
    delta = oracle_unit_columns.delta
    return math.sqrt(max(0.0, 1.0 - delta**2 * alpha * (2.0 - alpha) / n))


def acek_rate(A, col_schedule: Sequence[int], window: int, alpha: float,
              oracle: OracleSolution | None = None) -> float:
    """Worst contraction of ``||y - r||`` over any ``window`` consecutive column steps.

    The column schedule is repeated periodically.  For each of its offsets the
    composition of the relaxed column projections is restricted to ``R(A)``
    and its spectral norm taken; the maximum over offsets is returned.
    """
    A = as_matrix(A)
    if oracle is None:
        oracle = solve(A, np.zeros(A.m))
    sched = list(col_schedule)
    L = len(sched)
    cols = A.data / A.col_norms
    worst = 0.0
    for start in range(L):
        Q = oracle.U.copy()
        for t in range(1, window + 1):
            a = cols[:, sched[(start + t) % L]]
            Q -= alpha * np.outer(a, a @ Q)
        worst = max(worst, float(np.linalg.norm(Q, 2)))
    return worst
