import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from extkaczmarz import (AlmostCyclic, ContractError, Cyclic, DenseMatrix, MaxResidual,
                         RelaxationParams, SolverConfig, Variant, preset, solve)
from extkaczmarz.diagnostics import (BoundKind, BoundReport, IterationRecord, Recorder,
                                     applicable_checks, check_fejer_step, check_geometric_decay,
                                     check_pythagoras, check_rek_expectation, check_sequence_lemma,
                                     check_shift_lemma, check_summability, decay_window, fejer_terms,
                                     relaxation_identity_residual, shift_vector, summability_bound,
                                     verify_run)
from extkaczmarz.solvers import run_extended

from conftest import P1_R, P1_X_LS, random_problem


def _by_kind(reports):
    return {r.kind: r for r in reports}


def test_shift_vector_p1(p1):
    A = p1.A
    # row x1 + x2 = 1, r_3 = -1/3, y_3 = 0: shift (-1/6, -1/6)
    np.testing.assert_allclose(shift_vector(A, 2, -1 / 3, 0.0), [-1 / 6, -1 / 6])
    np.testing.assert_array_equal(shift_vector(A, 0, 0.25, 0.25), [0.0, 0.0])


def test_shift_lemma_examples(p1):
    A = p1.A
    # y_3 = 0: corrected rhs is 1, clean rhs is 1 - (-1/3) + 0 = 4/3
    probes = np.array([[2 / 3, 2 / 3], [4 / 3, 0.0], [0.0, 4 / 3]])
    rep = check_shift_lemma(A, 2, 1.0, -1 / 3, 0.0, probes)
    assert rep.passed and rep.worst_violation <= 1e-15
    with pytest.raises(ContractError):
        check_shift_lemma(A, 2, 1.0, -1 / 3, 0.0, [[0.0, 0.0]])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10_000))
def test_shift_lemma_random(seed):
    rng = np.random.default_rng(seed)
    A = DenseMatrix(rng.standard_normal((4, 3)))
    i = int(rng.integers(4))
    r_i, y_i, rhs = rng.standard_normal(3)
    a = A.data[i]
    P = rng.standard_normal((5, 3))
    P -= np.outer(P @ a - (rhs - r_i + y_i), a) / (a @ a)
    assert check_shift_lemma(A, i, rhs, r_i, y_i, P).passed


@pytest.mark.parametrize("omega", [1.0, 0.4, 1.9])
def test_pythagoras_and_fejer_relaxed(p1, omega):
    o = solve(p1.A, p1.b_hat)
    rec = Recorder(p1.A, p1.b_hat, o, keep_iterates=True)
    cfg = SolverConfig(Variant.EXTENDED, Cyclic(), RelaxationParams(1.0, omega), k_max=200)
    run_extended(p1, cfg, observer=rec)
    for k in range(1, len(rec.xs)):
        h = rec.records[k - 1]
        i = h.i_k
        res = check_pythagoras(rec.xs[k - 1], rec.xs[k], o.x_ls_min_norm, h.gamma_norm, omega,
                               p1.A, i, o.b_clean, o)
        assert res <= 1e-10
        eq, slack = check_fejer_step(rec.xs[k - 1], rec.xs[k], o.x_ls_min_norm, p1.A, i,
                                     o.b_clean, h.gamma_norm, omega, o)
        assert eq <= 1e-10 and slack >= -1e-12


def test_unrelaxed_form_fails_for_omega_not_one(p1):
    # without the cross term the omega^2 ||gamma||^2 form is off for omega != 1
    o = solve(p1.A, p1.b_hat)
    omega = 1.9
    x_prev = np.zeros(2)
    a = p1.A.data[2]
    x_next = x_prev - omega * (a @ x_prev - p1.b_hat[2]) / 2 * a
    g = abs(o.r[2]) / np.sqrt(2)
    xs = x_prev - omega * (a @ x_prev - o.b_clean[2]) / 2 * a
    naive = np.sum((x_next - P1_X_LS) ** 2) - np.sum((xs - P1_X_LS) ** 2) - omega**2 * g**2
    assert abs(naive) > 1e-3
    assert check_pythagoras(x_prev, x_next, P1_X_LS, g, omega, p1.A, 2, o.b_clean) <= 1e-12


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 100_000), st.floats(0.01, 1.99))
def test_fejer_terms_exact_split(seed, omega):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(3)
    x_prev, x_star = rng.standard_normal(3), rng.standard_normal(3)
    b_i = a @ x_star
    shift = rng.standard_normal()  # (r_i - y_i) / ||a||
    rhs = b_i + shift * np.linalg.norm(a)
    x_next = x_prev - omega * (a @ x_prev - rhs) / (a @ a) * a
    beta, eps = fejer_terms(a @ x_prev - b_i, shift, np.linalg.norm(a), omega)
    assert beta >= 0 and eps >= 0
    d_prev, d_next = np.sum((x_prev - x_star) ** 2), np.sum((x_next - x_star) ** 2)
    assert abs(d_next - (d_prev - beta + eps)) <= 1e-10 * (1 + d_prev + d_next)
    q = omega / (2 - omega)
    step = np.sum((x_next - x_prev) ** 2)
    assert step <= 2 * q * beta + 2 * max(1.0, q) * eps + 1e-10 * (1 + step)


def test_fejer_terms_omega_one():
    beta, eps = fejer_terms(3.0, 0.5, 2.0, 1.0)
    assert beta == pytest.approx(2.25) and eps == pytest.approx(0.25)


@pytest.mark.parametrize("omega,alpha", [(1.9, 1.0), (0.5, 1.5)])
def test_verify_run_relaxed(omega, alpha):
    p = random_problem(23, m=10, n=4, rank=4, noise=1.0)
    cfg = preset("mrek", relax=RelaxationParams(alpha, omega), k_max=3000)
    _, reps = verify_run(p, cfg)
    assert all(r.passed for r in reps), [r.to_line() for r in reps if not r.passed]


def test_pythagoras_rejects_non_solution(p1):
    o = solve(p1.A, p1.b_hat)
    with pytest.raises(ContractError):
        check_pythagoras(np.zeros(2), np.zeros(2), np.ones(2), 0.0, 1.0, p1.A, 0, o.b_clean, o)


def test_fejer_detects_wrong_gamma(p1):
    o = solve(p1.A, p1.b_hat)
    # one plain step from 0 on row 3 with the noisy rhs overshoots the clean hyperplane
    x1 = np.array([0.5, 0.5])
    eq_ok, _ = check_fejer_step(np.zeros(2), x1, P1_X_LS, p1.A, 2, o.b_clean,
                                abs(P1_R[2]) / math.sqrt(2), 1.0)
    eq_bad, _ = check_fejer_step(np.zeros(2), x1, P1_X_LS, p1.A, 2, o.b_clean, 0.0, 1.0)
    assert eq_ok <= 1e-14 and eq_bad > 1e-3


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 100_000), st.floats(0.0, 2.0))
def test_relaxation_identity(seed, alpha):
    rng = np.random.default_rng(seed)
    A = DenseMatrix(rng.standard_normal((5, 3)) * rng.uniform(0.1, 5, 3))
    y = rng.standard_normal(5) * rng.uniform(0.01, 100)
    assert relaxation_identity_residual(A, y, int(rng.integers(3)), alpha) <= 1e-10


def _hist(gammas, ys=None):
    return [IterationRecord(k + 1, 0, 0, None if ys is None else ys[k], g, None, None, 0.0, None)
            for k, g in enumerate(gammas)]


def test_geometric_decay_synthetic():
    g = 0.5 ** np.arange(1, 21)
    assert check_geometric_decay(_hist(g), 1.0, 0.5).passed
    bad = g.copy()
    bad[7] *= 1.5
    rep = check_geometric_decay(_hist(bad), 1.0, 0.5)
    assert not rep.passed and rep.at_iteration == 8
    # window mode: exponent k // 4
    gw = 0.5 ** (np.arange(1, 21) // 4)
    assert check_geometric_decay(_hist(gw), 1.0, 0.5, "acek", 4).passed
    assert not check_geometric_decay(_hist(gw), 1.0, 0.5, "mrek").passed
    with pytest.raises(ValueError):
        check_geometric_decay(_hist(gw), 1.0, 0.5, "acek")


def test_summability_synthetic():
    assert summability_bound(1.0, 0.5) == pytest.approx(4 / 3)
    assert summability_bound(1.0, 0.5, "acek", 3) == pytest.approx(4.0)
    assert summability_bound(1.0, 1.0) == np.inf
    g = 0.5 ** np.arange(1, 60)
    assert check_summability(_hist(g), 1.0, 0.5).passed
    assert not check_summability(_hist(np.ones(5)), 1.0, 0.5).passed


def test_p1_mrek_decay(p1):
    _, reps = verify_run(p1, preset("mrek", k_max=200), checks=["decay", "summability"])
    rep = _by_kind(reps)
    assert rep[BoundKind.GEOMETRIC_DECAY].passed and rep[BoundKind.SUMMABILITY].passed


def test_p1_mrek_rate_is_sqrt3_over_2(p1):
    from extkaczmarz import mrek_rate, normalize_columns
    o = solve(normalize_columns(p1.A)[0], p1.b_hat)
    assert mrek_rate(o, 1.0, 2) == pytest.approx(math.sqrt(3) / 2, abs=1e-14)


def test_p1_acek_cyclic_window(p1):
    cfg = preset("acek", k_max=300)
    assert decay_window(cfg, 3, 2) == 3
    assert decay_window(SolverConfig(control=AlmostCyclic((0, 1, 2), (1, 0))), 3, 2) == 3
    assert decay_window(SolverConfig(control=AlmostCyclic((0, 1, 2), (1, 0), 3, 4)), 3, 2) == 4
    assert decay_window(preset("mrek"), 3, 2) is None
    _, reps = verify_run(p1, cfg)
    assert all(r.passed for r in reps), [r.to_line() for r in reps if not r.passed]


@pytest.mark.parametrize("name", ["mrek", "acek", "rek", "ek", "k"])
def test_verify_run_all_applicable_pass(name):
    p = random_problem(21, m=10, n=4, rank=3, noise=0.5)
    cfg = preset(name, k_max=1500)
    kw = {"rek_trials": 30} if name == "rek" else {}
    if name == "k":
        # plain Kaczmarz is only free of noise bias for consistent systems
        p = random_problem(21, m=10, n=4, rank=3, noise=0.0)
    _, reps = verify_run(p, cfg, **kw)
    failed = [r.to_line() for r in reps if not r.passed]
    assert not failed


def test_verify_run_rejects_inapplicable(p1):
    with pytest.raises(ValueError):
        verify_run(p1, preset("acek", k_max=10), checks=["selection"])
    with pytest.raises(ValueError):
        verify_run(p1, preset("k", k_max=10), checks=["decay"])
    assert "rek" in applicable_checks(preset("rek"))
    assert "selection" in applicable_checks(preset("mrek"))


def test_sequence_lemma_geometric():
    eps = 0.5 ** np.arange(1, 40)
    beta = np.zeros_like(eps)
    a = np.concatenate([[1.0], 1.0 + np.cumsum(eps)])
    assert check_sequence_lemma(a, beta, eps).passed


def test_sequence_lemma_rejects_harmonic():
    eps = 1.0 / np.arange(1, 200)
    a = np.concatenate([[1.0], 1.0 + np.cumsum(eps)])
    with pytest.raises(ValueError, match="summable"):
        check_sequence_lemma(a, np.zeros_like(eps), eps)


def test_sequence_lemma_input_errors():
    with pytest.raises(ValueError):
        check_sequence_lemma([1.0, 1.0], [0.0, 0.0], [0.0])
    with pytest.raises(ValueError):
        check_sequence_lemma([1.0, 2.0], [0.0], [0.0])
    with pytest.raises(ValueError):
        check_sequence_lemma([1.0, 0.0], [-1.0], [-2.0])


def test_sequence_lemma_from_mrek(p1):
    _, reps = verify_run(p1, preset("mrek", k_max=300), checks=["sequence", "cauchy"])
    assert all(r.passed for r in reps)


def test_rek_expectation_p1(p1):
    rep = check_rek_expectation(p1, trials=100, checkpoints=(10, 50, 200), seed=0)
    assert rep.kind is BoundKind.REK_BOUND and rep.passed
    again = check_rek_expectation(p1, trials=100, checkpoints=(10, 50, 200), seed=0)
    assert again == rep
    with pytest.raises(ValueError):
        check_rek_expectation(p1, trials=10)


def test_residual_decay_and_limit_mrek():
    p = random_problem(33, m=15, n=6, rank=6, noise=1.0)
    _, reps = verify_run(p, preset("mrek", k_max=3000),
                         checks=["residual_decay", "limit", "membership", "selection"])
    assert all(r.passed for r in reps), [r.to_line() for r in reps]


def test_selection_check_normalized_rows():
    p = random_problem(34, m=12, n=5, rank=5, noise=0.1)
    _, reps = verify_run(p, preset("mrek", MaxResidual(normalize_rows=True), k_max=200),
                         checks=["selection"])
    assert reps[0].passed


def test_bound_report_formatting():
    r = BoundReport.from_violations(BoundKind.PYTHAGORAS, [0.0, 2e-11, 1e-12], 1e-10, [5, 6, 7])
    assert r.passed and r.at_iteration == 6
    assert r.to_line() == ("kind=Pythagoras passed=true worst_violation=2e-11 "
                           "tolerance=1e-10 at_iteration=6")
    assert r.csv_row() == ["Pythagoras", "true", "2e-11", "1e-10", "6"]
    empty = BoundReport.from_violations(BoundKind.PYTHAGORAS, [], 1e-10)
    assert empty.passed and empty.at_iteration is None
