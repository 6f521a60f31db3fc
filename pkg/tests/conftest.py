import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def random_tpm(rng, n_elements, sparsity=0.0):
    size = 1 << n_elements
    m = rng.random((size, size))
    if sparsity:
        m[rng.random((size, size)) < sparsity] = 0.0
        m[np.arange(size), rng.integers(0, size, size)] += 0.1
    return m / m.sum(axis=1, keepdims=True)


def random_distribution(rng, size, sparsity=0.0):
    p = rng.random(size)
    if sparsity:
        p[rng.random(size) < sparsity] = 0.0
        p[rng.integers(0, size)] += 0.1
    return p / p.sum()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def acceptance_report():
    def report(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
