import numpy as np
import pytest

from extkaczmarz import GeneratorSpec, example_p1, generate

P1_X_LS = np.array([2.0, 2.0]) / 3.0
P1_R = np.array([1.0, 1.0, -1.0]) / 3.0


@pytest.fixture
def p1():
    return example_p1()


@pytest.fixture
def p1_unit():
    return np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]) / np.sqrt(2.0)


def random_problem(seed, m=None, n=None, rank=None, cond=None, noise=None):
    """Small seeded problem; unspecified sizes are drawn from ``seed`` as well."""
    rng = np.random.default_rng(seed)
    m = m or int(rng.integers(4, 31))
    n = n or int(rng.integers(2, min(m, 15) + 1))
    if rank is None:
        rank = min(m, n) if rng.random() < 0.5 else int(rng.integers(1, min(m, n) + 1))
    rank = min(rank, min(m, n))
    if noise is None:
        noise = [0.0, 0.1, 1.0][int(rng.integers(3))]
    if rank == m:
        noise = 0.0
    cond = cond or float(rng.uniform(1.0, 4.0))
    return generate(GeneratorSpec(m, n, rank, cond, noise, seed)).problem


_ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Call with ``(label, title, passed, detail)`` to report one criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, {})

    def report(label, title, passed, detail=""):
        label = str(label)
        line = f"criterion {label:>3} {'PASS' if passed else 'FAIL'}  {title}  {detail}".rstrip()
        lines[label] = line
        print(line)
        return passed

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for label in sorted(lines, key=lambda s: (int(s.rstrip("ab")), s)):
            terminalreporter.write_line(lines[label])
