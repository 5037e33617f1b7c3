"""Per-iteration recording and numerical verification of the convergence theory.

A :class:`Recorder` is passed to a solver as its observer.  With an oracle it
fills :class:`IterationRecord` entries (errors against the exact solution);
with ``keep_iterates=True`` it also keeps every ``x^k`` and ``y^k`` so the
identity checks below can be evaluated after the run.

Every check returns a :class:`BoundReport`.  ``worst_violation`` is always
scaled so that the check passes iff it does not exceed ``tolerance``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from . import oracle as _oracle
from .control import AlmostCyclic, Cyclic, MaxResidual, WeightedRandom
from .core import ContractError, DenseMatrix, Problem, as_matrix, normalize_columns
from .solvers import RelaxationParams, SolverConfig, Variant, run


@dataclass
class IterationRecord:
    k: int
    j_k: Optional[int]
    i_k: int
    y_err: Optional[float]
    gamma_norm: Optional[float]
    x_err: Optional[float]
    dist_lss: Optional[float]
    row_resid_corrected: float
    row_resid_clean: Optional[float]


class BoundKind(str, Enum):
    GEOMETRIC_DECAY = "GeometricDecay"
    SUMMABILITY = "Summability"
    FEJER_IDENTITY = "FejerIdentity"
    FEJER_INEQUALITY = "FejerInequality"
    PYTHAGORAS = "Pythagoras"
    REK_BOUND = "REKBound"
    SHIFT_LEMMA = "ShiftLemma"
    SEQUENCE_LEMMA = "SequenceLemma"
    CAUCHY_STEP = "CauchyStep"
    RESIDUAL_DECAY = "ResidualDecay"
    SELECTION = "SelectionOptimality"
    MEMBERSHIP = "Membership"
    Y_LIMIT = "YLimit"


REPORT_HEADER = ("kind", "passed", "worst_violation", "tolerance", "at_iteration")


@dataclass(frozen=True)
class BoundReport:
    kind: BoundKind
    passed: bool
    worst_violation: float
    tolerance: float
    at_iteration: Optional[int] = None

    @classmethod
    def from_violations(cls, kind, violations, tolerance, iterations=None):
        v = np.asarray(violations, dtype=np.float64)
        if v.size == 0:
            return cls(kind, True, 0.0, tolerance, None)
        w = int(np.argmax(v))
        at = int(iterations[w]) if iterations is not None else w
        worst = float(v[w])
        return cls(kind, bool(worst <= tolerance), worst, tolerance, at)

    def to_line(self) -> str:
        at = "" if self.at_iteration is None else self.at_iteration
        return (f"kind={self.kind.value} passed={str(self.passed).lower()} "
                f"worst_violation={self.worst_violation!r} tolerance={self.tolerance!r} "
                f"at_iteration={at}")

    def csv_row(self) -> list[str]:
        return [self.kind.value, str(self.passed).lower(), repr(self.worst_violation),
                repr(self.tolerance), "" if self.at_iteration is None else str(self.at_iteration)]


class Recorder:
    """Observer collecting per-iteration metrics.

    ``x_star`` defaults to the oracle's minimum-norm solution.
    """

    def __init__(self, A, b_hat, oracle: Optional[_oracle.OracleSolution] = None,
                 x_star=None, keep_iterates: bool = False):
        self.A = as_matrix(A)
        self.b_hat = np.asarray(b_hat, dtype=np.float64)
        self.oracle = oracle
        if x_star is None and oracle is not None:
            x_star = oracle.x_ls_min_norm
        self.x_star = None if x_star is None else np.asarray(x_star, dtype=np.float64)
        self.keep_iterates = keep_iterates
        self.records: list[IterationRecord] = []
        self.xs: list[np.ndarray] = []
        self.ys: list[np.ndarray] = []
        self.js: list[Optional[int]] = []
        self.is_: list[int] = []

    def step(self, k, j, i, x_prev, x, y, b_hat_k):
        a = self.A.data[i]
        ax = float(a @ x_prev)
        resid_corr = abs(ax - b_hat_k[i])
        y_err = gamma = x_err = dist = clean = None
        o = self.oracle
        if o is not None:
            clean = abs(ax - o.b_clean[i])
            dist = _oracle.distance_to_lss(o, self.A, x)
            if y is not None:
                y_err = float(np.linalg.norm(y - o.r))
                gamma = abs(o.r[i] - y[i]) / self.A.row_norms[i]
        if self.x_star is not None:
            x_err = float(np.linalg.norm(x - self.x_star))
        self.records.append(IterationRecord(k, j, i, y_err, gamma, x_err, dist, resid_corr, clean))
        if self.keep_iterates:
            if not self.xs:
                self.xs.append(np.array(x_prev))
                self.ys.append(self.b_hat.copy())
            self.xs.append(np.array(x))
            self.ys.append(None if y is None else np.array(y))
            self.js.append(j)
            self.is_.append(i)

    @property
    def extended(self) -> bool:
        return bool(self.records) and self.records[0].j_k is not None

    def y_array(self) -> np.ndarray:
        """``y^0 .. y^K``; for plain Kaczmarz ``y`` is identically zero."""
        if not self.extended:
            return np.zeros((len(self.xs), self.A.m))
        return np.array(self.ys)


# -- single-step identities ------------------------------------------------------

def _require_lss(x_star, oracle, A):
    if oracle is not None and _oracle.distance_to_lss(oracle, A, x_star) > 1e-8:
        raise ContractError("x_star is not a least-squares solution")


def shift_vector(A: DenseMatrix, i: int, r_i: float, y_i: float) -> np.ndarray:
    """Shift ``gamma_i`` carrying the clean hyperplane ``H_i`` onto the corrected one."""
    return (r_i - y_i) / A.row_norms[i] ** 2 * A.data[i]


def check_shift_lemma(A, i: int, rhs_corrected_i: float, r_i: float, y_i: float,
                      probes) -> BoundReport:
    """Shifting points of ``H_i`` by ``gamma_i`` lands them on the corrected hyperplane.

    ``probes`` (one point per row) must lie on ``<A_i, x> = b_i`` where
    ``b_i = rhs_corrected_i - r_i + y_i``.
    """
    A = as_matrix(A)
    a = A.data[i]
    b_i = rhs_corrected_i - r_i + y_i
    probes = np.atleast_2d(probes)
    scale = 1.0 + np.abs(probes @ a).max() + abs(rhs_corrected_i)
    on_h = np.abs(probes @ a - b_i)
    if np.any(on_h > 1e-12 * scale):
        raise ContractError("probe point not on the clean hyperplane")
    g = shift_vector(A, i, r_i, y_i)
    resid = np.abs((probes + g) @ a - rhs_corrected_i) / scale
    return BoundReport.from_violations(BoundKind.SHIFT_LEMMA, resid, 1e-10)


def _clean_projection(A, x_prev, i, b_clean, omega):
    a = A.data[i]
    c = float(a @ x_prev - b_clean[i])
    return x_prev - omega * c / A.row_norms[i] ** 2 * a, c


def _signed(A, i, x_prev, x_next, b_clean, omega, gamma_norm, signed_shift):
    """Signed shift ``(r_i - y_i) / ||A_i||``; the sign is read off the step if not given."""
    if signed_shift is not None:
        return float(signed_shift)
    xs, _ = _clean_projection(A, x_prev, i, b_clean, omega)
    along = float(A.data[i] @ (x_next - xs))
    return float(gamma_norm) if along >= 0 else -float(gamma_norm)


def fejer_terms(c_clean, shift, row_norm, omega):
    """Split one row step into ``(beta_k, eps_k)`` with ``d_k = d_{k-1} - beta_k + eps_k``.

    ``c_clean`` is ``<A_i, x^{k-1}> - b_i`` and ``shift`` the signed
    ``(r_i - y_i) / ||A_i||``.  Both terms are nonnegative.  For ``omega = 1``
    they are the squared normalized clean residual and ``||gamma_i||^2``.
    """
    c = np.asarray(c_clean, dtype=float) / row_norm
    d = np.asarray(shift, dtype=float)
    beta = omega * (2 - omega) * (c - (1 - omega) / (2 - omega) * d) ** 2
    eps = omega / (2 - omega) * d**2
    return beta, eps


def check_pythagoras(x_prev, x_next, x_star, gamma_norm: float, omega: float,
                     A, i: int, b_clean, oracle=None, signed_shift=None) -> float:
    """Relative residual of ``||x^k - x||^2 = ||x^k_* - x||^2 + omega^2 ||gamma||^2``.

    ``x^k_*`` is the relaxed projection of ``x_prev`` onto the clean
    hyperplane of row ``i``.  For ``omega != 1`` the vectors ``x^k_* - x`` and
    ``gamma`` are no longer orthogonal and the exact cross term
    ``2 omega (1 - omega) c delta`` is included, where ``c`` is the normalized
    clean residual of ``x_prev`` and ``delta`` the signed shift.
    """
    A = as_matrix(A)
    _require_lss(x_star, oracle, A)
    xs, c = _clean_projection(A, x_prev, i, b_clean, omega)
    d = _signed(A, i, x_prev, x_next, b_clean, omega, gamma_norm, signed_shift)
    cross = 2 * omega * (1 - omega) * c / A.row_norms[i] * d
    lhs = float(np.sum((x_next - x_star) ** 2))
    rhs = float(np.sum((xs - x_star) ** 2)) + cross + omega**2 * gamma_norm**2
    return abs(lhs - rhs) / (1.0 + lhs)


def check_fejer_step(x_prev, x_next, x_star, A, i: int, b_clean, gamma_norm: float,
                     omega: float, oracle=None, signed_shift=None) -> tuple[float, float]:
    """Residual of the one-step distance identity and slack of the quasi-Fejer inequality.

    Identity, written with :func:`fejer_terms`::

        ||x^k - x||^2 = ||x^{k-1} - x||^2 - beta_k + eps_k

    which for ``omega = 1`` reads
    ``||x^{k-1} - x||^2 - (<A_i, x^{k-1}> - b_i)^2 / ||A_i||^2 + ||gamma_i||^2``.
    Inequality: ``||x^k - x||^2 <= ||x^{k-1} - x||^2 + eps_k``, where
    ``eps_k = omega / (2 - omega) ||gamma_i||^2`` (``= omega^2 ||gamma_i||^2`` at ``omega = 1``).
    """
    A = as_matrix(A)
    _require_lss(x_star, oracle, A)
    c = float(A.data[i] @ x_prev - b_clean[i])
    d = _signed(A, i, x_prev, x_next, b_clean, omega, gamma_norm, signed_shift)
    beta, eps = fejer_terms(c, d, A.row_norms[i], omega)
    d_prev = float(np.sum((x_prev - x_star) ** 2))
    d_next = float(np.sum((x_next - x_star) ** 2))
    residual = abs(d_next - (d_prev - float(beta) + float(eps))) / (1.0 + max(d_prev, d_next))
    slack = d_prev + float(eps) - d_next
    return residual, slack


def relaxation_identity_residual(A, y, j: int, alpha: float) -> float:
    """Relative residual of ``||phi^a y||^2 - ||y||^2 = a(2-a)(||phi y||^2 - ||y||^2)``.

    ``phi`` is the projection removing column ``j`` from ``y`` and ``phi^a``
    its relaxed version.
    """
    A = as_matrix(A)
    a = A.data[:, j]
    t = float(a @ y) / A.col_norms[j] ** 2
    yy = float(y @ y)
    lhs = float(np.sum((y - alpha * t * a) ** 2)) - yy
    rhs = alpha * (2 - alpha) * (float(np.sum((y - t * a) ** 2)) - yy)
    return abs(lhs - rhs) / (1.0 + yy)


# -- bounds over a history -------------------------------------------------------

def _decay_exponents(ks, mode, window):
    ks = np.asarray(ks)
    if mode == "mrek":
        return ks
    if mode == "acek":
        if not window:
            raise ValueError("acek mode needs a window length")
        return ks // window
    raise ValueError(f"unknown mode {mode!r}")


def check_geometric_decay(history: Sequence[IterationRecord], M: float, gamma_rate: float,
                          mode: str = "mrek", window: Optional[int] = None,
                          y_scale: Optional[float] = None, slack: float = 1e-12) -> BoundReport:
    """Check ``||gamma_{i_k}|| <= M rate^e`` and, with ``y_scale``, ``||y^k - r|| <= y_scale rate^e``.

    ``e = k`` for maximal-residual control and ``e = k // window`` for
    almost-cyclic control.
    """
    ks = np.array([h.k for h in history])
    e = _decay_exponents(ks, mode, window)
    factor = float(gamma_rate) ** e
    viol = np.array([h.gamma_norm for h in history], dtype=float) - M * factor
    if y_scale is not None:
        viol_y = np.array([h.y_err for h in history], dtype=float) - y_scale * factor
        viol = np.maximum(viol, viol_y)
    return BoundReport.from_violations(BoundKind.GEOMETRIC_DECAY, viol, slack, ks)


def summability_bound(M: float, gamma_rate: float, mode: str = "mrek",
                      window: Optional[int] = None) -> float:
    g2 = float(gamma_rate) ** 2
    if g2 >= 1:
        return np.inf
    return M**2 / (1 - g2) * (window if mode == "acek" else 1)


def check_summability(history: Sequence[IterationRecord], M: float, gamma_rate: float,
                      mode: str = "mrek", window: Optional[int] = None,
                      slack: float = 1e-12) -> BoundReport:
    """Partial sums of ``||gamma_{i_k}||^2`` never exceed the geometric-series bound."""
    ks = np.array([h.k for h in history])
    partial = np.cumsum([h.gamma_norm**2 for h in history])
    bound = summability_bound(M, gamma_rate, mode, window)
    return BoundReport.from_violations(BoundKind.SUMMABILITY, partial - bound,
                                       slack * (1 + bound), ks)


def check_sequence_lemma(alphas, betas, epsilons, tail_tol: float = 1e-3) -> BoundReport:
    """Consequences of ``alpha_{k+1} = alpha_k - beta_k + eps_k`` with summable ``eps``.

    Verifies ``sum beta <= alpha_0 + sum eps`` and
    ``|alpha_{k+1} - alpha_k| <= eps_k + beta_k``.  A finite ``eps`` is
    considered summable when its second half contributes at most
    ``tail_tol`` of the total; otherwise ``ValueError`` is raised, as it is
    for a violated recurrence or negative entries.
    """
    a = np.asarray(alphas, dtype=float)
    b = np.asarray(betas, dtype=float)
    e = np.asarray(epsilons, dtype=float)
    if not (a.size == b.size + 1 == e.size + 1):
        raise ValueError("need len(alphas) == len(betas) + 1 == len(epsilons) + 1")
    if np.any(a < 0) or np.any(b < 0) or np.any(e < 0):
        raise ValueError("sequences must be nonnegative")
    scale = 1.0 + np.maximum(a[:-1], a[1:])
    rec = np.abs(a[1:] - (a[:-1] - b + e)) / scale
    if rec.size and rec.max() > 1e-12:
        raise ValueError(f"recurrence violated at index {int(np.argmax(rec))}")
    total = e.sum()
    tail = e[e.size // 2:].sum()
    if tail > max(tail_tol * total, 1e-24):
        raise ValueError("epsilons do not look summable (tail does not vanish)")
    viol = [(b.sum() - (a[0] + total)) / (1 + a[0] + total)]
    step = (np.abs(a[1:] - a[:-1]) - (e + b)) / scale
    if step.size:
        viol.append(step.max())
    return BoundReport(BoundKind.SEQUENCE_LEMMA, bool(max(viol) <= 1e-12), float(max(viol)), 1e-12,
                       None)


def check_rek_expectation(problem: Problem, trials: int = 100,
                          checkpoints: Sequence[int] = (10, 50, 200), seed: int = 0,
                          factor: float = 1.2) -> BoundReport:
    """Monte-Carlo check of the expected-error bound of randomized extended Kaczmarz.

    ``worst_violation`` is the largest ratio of the empirical mean of
    ``||x^k - x_LS||^2`` to the bound over the checkpoints.
    """
    if trials < 30:
        raise ValueError("need at least 30 trials")
    o = _oracle.solve(problem.A, problem.b_hat)
    cps = sorted(int(c) for c in checkpoints)
    sq = np.zeros((trials, len(cps)))
    seeds = np.random.SeedSequence(seed).generate_state(trials)
    for t, s in enumerate(seeds):
        cap = _Checkpoints(cps, o.x_ls_min_norm)
        cfg = SolverConfig(Variant.EXTENDED, WeightedRandom(int(s)), RelaxationParams(1.0, 1.0),
                           k_max=cps[-1])
        run(problem, cfg, np.zeros(problem.n), cap)
        sq[t] = cap.values
    mean = sq.mean(axis=0)
    bounds = np.array([_oracle.rek_bound(o, o.x_ls_norm, k) for k in cps])
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(bounds > 0, mean / bounds, np.where(mean > 0, np.inf, 0.0))
    return BoundReport.from_violations(BoundKind.REK_BOUND, ratio, factor, cps)


class _Checkpoints:
    def __init__(self, ks, x_ref):
        self.want = {k: n for n, k in enumerate(ks)}
        self.values = np.zeros(len(ks))
        self.x_ref = x_ref

    def step(self, k, j, i, x_prev, x, y, b_hat_k):
        n = self.want.get(k)
        if n is not None:
            self.values[n] = float(np.sum((x - self.x_ref) ** 2))


# -- full verification of a run ------------------------------------------------

ALL_CHECKS = ("shift", "pythagoras", "fejer", "cauchy", "sequence", "decay", "summability",
              "residual_decay", "selection", "membership", "limit", "rek")


def applicable_checks(config: SolverConfig) -> tuple[str, ...]:
    ctl = config.control
    if config.variant is Variant.PLAIN:
        return ("shift", "pythagoras", "fejer", "cauchy", "membership")
    checks = ["shift", "pythagoras", "fejer", "cauchy", "membership"]
    if isinstance(ctl, (MaxResidual, Cyclic, AlmostCyclic)):
        checks += ["sequence", "decay", "summability", "residual_decay", "limit"]
    if isinstance(ctl, MaxResidual):
        checks.append("selection")
    if isinstance(ctl, WeightedRandom):
        checks += ["residual_decay", "limit", "rek"]
    return tuple(checks)


def decay_window(config: SolverConfig, m: int, n: int) -> Optional[int]:
    """Window length for almost-cyclic decay checks: ``max(m0, n0)``."""
    ctl = config.control
    if isinstance(ctl, AlmostCyclic):
        return ctl.window
    if isinstance(ctl, Cyclic):
        return max(m, n)
    return None


def _column_schedule(config, n):
    ctl = config.control
    return list(ctl.col_schedule) if isinstance(ctl, AlmostCyclic) else list(range(n))


def verify_run(problem: Problem, config: SolverConfig, checks: Optional[Sequence[str]] = None,
               x0=None, oracle: Optional[_oracle.OracleSolution] = None,
               rek_trials: int = 100, rek_checkpoints=(10, 50, 200), seed: int = 0):
    """Run ``config`` on ``problem`` with full recording and evaluate the selected checks.

    Returns ``(run_result, reports)``.  Requested checks that do not apply to
    the configured method raise ``ValueError``.
    """
    allowed = applicable_checks(config)
    checks = allowed if checks is None else tuple(checks)
    bad = [c for c in checks if c not in allowed]
    if bad:
        raise ValueError(f"checks {bad} do not apply to this method (allowed: {list(allowed)})")
    A = problem.A
    o = oracle or _oracle.solve(A, problem.b_hat)
    rec = Recorder(A, problem.b_hat, o, keep_iterates=True)
    result = run(problem, config, x0, rec)
    omega, alpha = config.relax.omega, config.relax.alpha
    x_star = rec.x_star
    xs = np.array(rec.xs)
    ys = rec.y_array()
    ii = np.array(rec.is_)
    ks = np.arange(1, len(ii) + 1)
    rn = A.row_norms
    # signed shifts (r_i - y_i) / ||A_i|| with y = 0 for plain Kaczmarz
    shift = (o.r[ii] - ys[ks, ii]) / rn[ii]
    gam = np.abs(shift)
    c_clean = np.einsum("kj,kj->k", A.data[ii], xs[:-1]) - o.b_clean[ii]
    reports: list[BoundReport] = []

    if "shift" in checks:
        rng = np.random.default_rng(seed)
        worst = []
        for t, (k, i) in enumerate(zip(ks, ii)):
            a = A.data[i]
            P = x_star + rng.standard_normal((3, A.n))
            P -= np.outer(P @ a - o.b_clean[i], a) / rn[i] ** 2
            rhs = problem.b_hat[i] - ys[k, i]
            worst.append(check_shift_lemma(A, i, rhs, o.r[i], ys[k, i], P).worst_violation)
        reports.append(BoundReport.from_violations(BoundKind.SHIFT_LEMMA, worst, 1e-10, ks))

    if "pythagoras" in checks:
        res = [check_pythagoras(xs[k - 1], xs[k], x_star, gam[k - 1], omega, A, ii[k - 1], o.b_clean,
                                signed_shift=shift[k - 1]) for k in ks]
        reports.append(BoundReport.from_violations(BoundKind.PYTHAGORAS, res, 1e-10, ks))

    if "fejer" in checks:
        pairs = [check_fejer_step(xs[k - 1], xs[k], x_star, A, ii[k - 1], o.b_clean, gam[k - 1], omega,
                                  signed_shift=shift[k - 1]) for k in ks]
        eq = [p[0] for p in pairs]
        neg_slack = [-p[1] for p in pairs]
        reports.append(BoundReport.from_violations(BoundKind.FEJER_IDENTITY, eq, 1e-10, ks))
        reports.append(BoundReport.from_violations(BoundKind.FEJER_INEQUALITY, neg_slack, 1e-12, ks))

    beta, eps = fejer_terms(c_clean, shift, rn[ii], omega)

    if "cauchy" in checks:
        step2 = np.sum(np.diff(xs, axis=0) ** 2, axis=1)
        q = omega / (2 - omega)
        bound = 2 * q * beta + 2 * max(1.0, q) * eps
        reports.append(BoundReport.from_violations(
            BoundKind.CAUCHY_STEP, (step2 - bound) / (1 + bound), 1e-12, ks))

    if "sequence" in checks:
        alphas = np.sum((xs - x_star) ** 2, axis=1)
        reports.append(check_sequence_lemma(alphas, beta, eps))

    if "decay" in checks or "summability" in checks:
        b_norm = float(np.linalg.norm(o.b_clean))
        min_row = float(rn.min())
        if isinstance(config.control, MaxResidual):
            mode, window = "mrek", None
            A_unit = normalize_columns(A)[0]
            rate = _oracle.mrek_rate(_oracle.solve(A_unit, problem.b_hat), alpha, A.n)
            y_scale = b_norm
        else:
            mode = "acek"
            window = decay_window(config, A.m, A.n)
            rate = _oracle.acek_rate(A, _column_schedule(config, A.n), window, alpha, o)
            y_err0 = np.linalg.norm(ys[:window] - o.r, axis=1)
            y_scale = float(y_err0.max())
        M = y_scale / min_row
        if "decay" in checks:
            reports.append(check_geometric_decay(rec.records, M, rate, mode, window, y_scale))
        if "summability" in checks:
            reports.append(check_summability(rec.records, M, rate, mode, window))

    if "residual_decay" in checks:
        r_corr = np.array([h.row_resid_corrected for h in rec.records])
        d = max(1, len(r_corr) // 10)
        first, last = r_corr[:d].max(), r_corr[-d:].max()
        viol = 0.0 if first == 0 else last / first
        reports.append(BoundReport(BoundKind.RESIDUAL_DECAY, bool(first == 0 or last < first),
                                   float(viol), 1.0, None))

    if "selection" in checks:
        C = normalize_columns(A)[0].data
        viol = []
        jj = np.array(rec.js)
        for k in ks:
            corr = np.abs(C.T @ ys[k - 1])
            bk = problem.b_hat - ys[k]
            res = np.abs(A.data @ xs[k - 1] - bk)
            if config.control.normalize_rows:
                res = res / rn
            vj = (corr.max() - corr[jj[k - 1]]) / (1 + corr.max())
            vi = (res.max() - res[ii[k - 1]]) / (1 + res.max())
            viol.append(max(vj, vi))
        reports.append(BoundReport.from_violations(BoundKind.SELECTION, viol, 1e-12, ks))

    if "membership" in checks:
        if rec.extended:
            dy = ys - o.r
            out_y = np.linalg.norm(dy - (dy @ o.U) @ o.U.T, axis=1) / (1 + np.linalg.norm(ys, axis=1))
        else:
            out_y = np.zeros(len(xs))
        dx = xs - xs[0]
        out_x = np.linalg.norm(dx - (dx @ o.V) @ o.V.T, axis=1) / (1 + np.linalg.norm(xs, axis=1))
        viol = np.maximum(out_y, out_x)
        reports.append(BoundReport.from_violations(BoundKind.MEMBERSHIP, viol, 1e-9,
                                                   np.arange(len(viol))))

    if "limit" in checks:
        v = float(np.max(np.abs(ys[-1] - o.r)))
        reports.append(BoundReport(BoundKind.Y_LIMIT, bool(v <= 1e-8), v, 1e-8, int(ks[-1])))

    if "rek" in checks:
        reports.append(check_rek_expectation(problem, rek_trials, rek_checkpoints, seed))

    return result, reports
