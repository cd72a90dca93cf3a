import math

import pytest

from mexhat.wavelet_builder import build_wavelet

ACCEPTANCE_LINES = []

CASE1 = [0.5, 0, -0.5]
CASE2 = [-1, 0, -2, 0, 1]
CASE2_VARIANT = [-2, 0, -1, 0, 1]
CASE3 = [1, 0, 2, 0, 4, 0, -1]

PI_QUARTER = math.pi ** -0.25


@pytest.fixture(scope="session")
def mexican_hat():
    return build_wavelet(CASE1)


@pytest.fixture(scope="session")
def case2():
    return build_wavelet(CASE2)


@pytest.fixture(scope="session")
def case3():
    return build_wavelet(CASE3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
