"""Seeded test problems with known least-squares structure."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Problem, ProblemMeta


@dataclass(frozen=True)
class GeneratorSpec:
    """Random problem with prescribed rank, condition number and noise level.

    The nonzero singular values are geometrically spaced from 1 down to
    ``1/cond``.  The injected residual ``r`` is a seeded random vector
    projected onto ``N(A^T)`` and scaled to ``noise * ||b||``.
    """

    m: int
    n: int
    rank: int | None = None
    cond: float = 1.0
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")
        rank = min(self.m, self.n) if self.rank is None else int(self.rank)
        if not 1 <= rank <= min(self.m, self.n):
            raise ValueError(f"rank {rank} not in [1, min(m, n) = {min(self.m, self.n)}]")
        object.__setattr__(self, "rank", rank)
        if self.cond < 1:
            raise ValueError("cond must be >= 1")
        if self.noise < 0:
            raise ValueError("noise must be >= 0")
        if self.noise > 0 and rank == self.m:
            raise ValueError("noise > 0 needs rank < m (N(A^T) is trivial otherwise)")


@dataclass(frozen=True, eq=False)
class GeneratedProblem:
    problem: Problem
    sigma: np.ndarray
    spec: GeneratorSpec


def _orthonormal(rng, rows, cols):
    q, r = np.linalg.qr(rng.standard_normal((rows, cols)))
    return q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))


def generate(spec: GeneratorSpec) -> GeneratedProblem:
    rng = np.random.default_rng(spec.seed)
    m, n, k = spec.m, spec.n, spec.rank
    U = _orthonormal(rng, m, m)
    V = _orthonormal(rng, n, k)
    sigma = np.geomspace(1.0, 1.0 / spec.cond, k) if k > 1 else np.ones(1)
    A = (U[:, :k] * sigma) @ V.T
    x_true = V @ rng.standard_normal(k)
    b = A @ x_true
    if spec.noise > 0:
        Un = U[:, k:]
        r = Un @ (Un.T @ rng.standard_normal(m))
        r *= spec.noise * np.linalg.norm(b) / np.linalg.norm(r)
    else:
        r = np.zeros(m)
    return GeneratedProblem(Problem(A, b + r, ProblemMeta(x_true, r)), sigma, spec)


def example_p1() -> Problem:
    """The 3x2 system ``x1 = 1, x2 = 1, x1 + x2 = 1``.

    Least-squares solution ``(2/3, 2/3)``, residual component
    ``r = (1/3, 1/3, -1/3)``.
    """
    A = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    b_hat = np.ones(3)
    r = np.array([1.0, 1.0, -1.0]) / 3.0
    return Problem(A, b_hat, ProblemMeta(np.array([2.0, 2.0]) / 3.0, r))
