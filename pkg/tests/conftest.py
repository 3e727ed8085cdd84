import time

import numpy as np
import pytest

from harmlab import kernels

ACCEPTANCE_LINES = []
_SESSION_START = time.perf_counter()


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    """Run a test once per available kernel backend."""
    previous = kernels.BACKEND
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def record_acceptance():
    def record(number, passed, text):
        line = f"[criterion {number}] {'PASS' if passed else 'FAIL'}  {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
        dt = time.perf_counter() - _SESSION_START
        flag = "PASS" if dt < 30 else "FAIL"
        terminalreporter.write_line(f"[criterion 9] {flag}  full test session {dt:.1f}s < 30s")
