import numpy as np
import pytest

from opineq.sampling import ginibre


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def random_hermitian(n, rng, spread=1.0):
    G = ginibre(n, n, rng) * spread
    return 0.5 * (G + G.conj().T)


def random_pd(n, rng, lo=0.1, hi=4.0):
    from opineq.sampling import random_psd_in
    return random_psd_in(n, (lo, hi), rng)


# acceptance criteria report one line each; they are echoed in the terminal summary
ACCEPTANCE_LINES = []


def record_criterion(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append((number, line))
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
