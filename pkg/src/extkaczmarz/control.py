"""Row and column index selection strategies.

Four control strategies drive the extended iteration:

* ``Cyclic``: ``i_k = k mod m``, ``j_k = k mod n`` (0-based).
* ``AlmostCyclic``: explicit schedules repeated periodically, where every
  window of ``m0`` (resp. ``n0``) consecutive entries covers all indices.
* ``MaxResidual``: the column with the largest correlation with ``y`` and
  the row with the largest residual against the corrected right-hand side.
* ``WeightedRandom``: rows drawn with probability ``||A_i||^2 / ||A||_F^2``,
  columns with ``||A^j||^2 / ||A||_F^2``.

Selectors returned by :func:`make_selector` hold the per-run state (cursor or
generator) and are not meant to be shared between runs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .core import DenseMatrix, as_matrix


@dataclass(frozen=True)
class Cyclic:
    pass


@dataclass(frozen=True)
class AlmostCyclic:
    row_schedule: tuple
    col_schedule: tuple
    m0: Optional[int] = None
    n0: Optional[int] = None

    def __post_init__(self):
        rows = tuple(int(i) for i in self.row_schedule)
        cols = tuple(int(j) for j in self.col_schedule)
        if not rows or not cols:
            raise ValueError("almost-cyclic schedules must be non-empty")
        object.__setattr__(self, "row_schedule", rows)
        object.__setattr__(self, "col_schedule", cols)
        object.__setattr__(self, "m0", len(rows) if self.m0 is None else int(self.m0))
        object.__setattr__(self, "n0", len(cols) if self.n0 is None else int(self.n0))

    @property
    def window(self) -> int:
        return max(self.m0, self.n0)

    def validate(self, m: int, n: int) -> None:
        """Raise :class:`ScheduleError` unless both schedules are almost cyclic."""
        for name, sched, size, win in (
            ("row", self.row_schedule, m, self.m0),
            ("column", self.col_schedule, n, self.n0),
        ):
            report = validate_almost_cyclic(sched, size, win)
            if not report.ok:
                raise ScheduleError(f"{name} schedule: {report}")


@dataclass(frozen=True)
class MaxResidual:
    """Maximal-residual control.

    ``normalize_rows`` divides row residuals by ``||A_i||`` before the argmax
    (distance to the hyperplane instead of the raw residual).  Off by default.
    """

    normalize_rows: bool = False


@dataclass(frozen=True)
class WeightedRandom:
    seed: int = 0


ControlSpec = Union[Cyclic, AlmostCyclic, MaxResidual, WeightedRandom]


class ScheduleError(ValueError):
    pass


def cyclic_next(k: int, size: int) -> int:
    if size < 1:
        raise ValueError("size must be positive")
    return k % size


@dataclass(frozen=True)
class ScheduleReport:
    ok: bool
    window_start: Optional[int] = None
    missing: tuple = ()

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return f"window starting at position {self.window_start} misses indices {list(self.missing)}"


def validate_almost_cyclic(schedule: Sequence[int], size: int, window: int) -> ScheduleReport:
    """Check that every cyclic window of ``window`` entries covers ``range(size)``.

    The schedule is read as an infinite periodic sequence, so windows wrap
    around its end and may be longer than the schedule itself.
    """
    sched = np.asarray(schedule, dtype=np.int64)
    if sched.size == 0:
        raise ValueError("schedule is empty")
    if window < 1:
        raise ValueError("window must be positive")
    bad = np.flatnonzero((sched < 0) | (sched >= size))
    if bad.size:
        raise ValueError(f"schedule entry {int(sched[bad[0]])} at position {int(bad[0])} "
                         f"out of range [0, {size})")
    L = sched.size
    reps = -(-(L + window) // L)
    ext = np.tile(sched, reps)
    # sliding counts of each index over the extended sequence
    counts = np.zeros(size, dtype=np.int64)
    np.add.at(counts, ext[:window], 1)
    for start in range(L):
        if start:
            counts[ext[start - 1]] -= 1
            counts[ext[start + window - 1]] += 1
        if not np.all(counts):
            return ScheduleReport(False, start, tuple(int(i) for i in np.flatnonzero(counts == 0)))
    return ScheduleReport(True)


def max_residual_row(A: DenseMatrix, x, b_hat_k, normalize: bool = False) -> int:
    """Row with the largest ``|<A_i, x> - b_hat_k[i]|``; ties go to the smallest index."""
    A = as_matrix(A)
    res = np.abs(A.data @ x - b_hat_k)
    if normalize:
        res = res / A.row_norms
    return int(np.argmax(res))


def max_correlation_col(A: DenseMatrix, y) -> int:
    """Column with the largest ``|<A^j, y>|``; ties go to the smallest index."""
    A = as_matrix(A)
    return int(np.argmax(np.abs(A.data.T @ y)))


class IndexDistribution:
    """Discrete probability vector with a cached CDF for inverse-CDF sampling."""

    def __init__(self, weights):
        w = np.asarray(weights, dtype=np.float64).ravel()
        if w.size == 0 or np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be a non-empty nonnegative vector")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {w.sum()!r}, not 1")
        self.weights = w
        cdf = np.cumsum(w)
        cdf[-1] = 1.0
        self._cdf = cdf

    def __len__(self):
        return self.weights.size

    def __repr__(self):
        return f"IndexDistribution({self.weights!r})"


def build_distributions(A) -> tuple[IndexDistribution, IndexDistribution]:
    A = as_matrix(A)
    fro2 = A.frobenius**2
    return IndexDistribution(A.row_norms**2 / fro2), IndexDistribution(A.col_norms**2 / fro2)


def sample_index(dist: IndexDistribution, rng: np.random.Generator) -> int:
    u = rng.random()
    idx = int(np.searchsorted(dist._cdf, u, side="right"))
    return min(idx, len(dist) - 1)


def spawn_generators(seed: int, count: int = 2) -> list[np.random.Generator]:
    """Independent PCG64 streams derived from one seed (columns first, then rows)."""
    children = np.random.SeedSequence(int(seed)).spawn(count)
    return [np.random.Generator(np.random.PCG64(s)) for s in children]


class Selector:
    """Per-run index stream.

    ``column(k, corr)`` and ``row(k, res)`` receive the current correlation
    vector ``A^T y`` and residual vector ``A x - b_hat_k`` when the strategy
    needs them (``needs_vectors`` is true), otherwise ``None``.
    """

    needs_vectors = False

    def column(self, k: int, corr) -> int:
        raise NotImplementedError

    def row(self, k: int, res) -> int:
        raise NotImplementedError


class _CyclicSelector(Selector):
    def __init__(self, m, n):
        self.m, self.n = m, n

    def column(self, k, corr):
        return k % self.n

    def row(self, k, res):
        return k % self.m


class _ScheduleSelector(Selector):
    def __init__(self, spec: AlmostCyclic):
        self.rows = spec.row_schedule
        self.cols = spec.col_schedule

    def column(self, k, corr):
        return self.cols[k % len(self.cols)]

    def row(self, k, res):
        return self.rows[k % len(self.rows)]


class _MaxResidualSelector(Selector):
    needs_vectors = True

    def __init__(self, spec: MaxResidual, row_norms):
        self.row_scale = 1.0 / row_norms if spec.normalize_rows else None

    def column(self, k, corr):
        return int(np.argmax(np.abs(corr)))

    def row(self, k, res):
        res = np.abs(res)
        if self.row_scale is not None:
            res = res * self.row_scale
        return int(np.argmax(res))


class _RandomSelector(Selector):
    def __init__(self, spec: WeightedRandom, A: DenseMatrix):
        self.p, self.q = build_distributions(A)
        self.col_rng, self.row_rng = spawn_generators(spec.seed)

    def column(self, k, corr):
        return sample_index(self.q, self.col_rng)

    def row(self, k, res):
        return sample_index(self.p, self.row_rng)


def make_selector(spec: ControlSpec, A) -> Selector:
    A = as_matrix(A)
    if isinstance(spec, Cyclic):
        return _CyclicSelector(A.m, A.n)
    if isinstance(spec, AlmostCyclic):
        spec.validate(A.m, A.n)
        return _ScheduleSelector(spec)
    if isinstance(spec, MaxResidual):
        return _MaxResidualSelector(spec, A.row_norms)
    if isinstance(spec, WeightedRandom):
        return _RandomSelector(spec, A)
    raise TypeError(f"unknown control spec {spec!r}")
