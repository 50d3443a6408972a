import numpy as np
import pytest

from dcearma.rng import stream


@pytest.fixture
def rng():
    return stream(20240601)


def long_division(b, a, length):
    """Power-series coefficients of b(z)/a(z) in z^-1, a[0] == 1."""
    b = list(b) + [0.0] * length
    h = []
    for k in range(length):
        c = b[k] - sum(a[j] * h[k - j] for j in range(1, min(k, len(a) - 1) + 1))
        h.append(c)
    return np.array(h)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: the ten acceptance criteria")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
