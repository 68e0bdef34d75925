import math
import time

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# filled by test_acceptance; one (label, passed, detail) tuple per criterion
ACCEPTANCE_LINES = []


_SESSION_START = []


def pytest_sessionstart(session):
    _SESSION_START.append(time.perf_counter())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in sorted(ACCEPTANCE_LINES, key=lambda r: r[0]):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
    elapsed = time.perf_counter() - _SESSION_START[0]
    verdict = "PASS" if elapsed < 300 else "FAIL"
    terminalreporter.write_line(f"{verdict}  C10 suite runtime: {elapsed:.1f} s for this session (< 300 s)")


@pytest.fixture(scope="session")
def theta_interior():
    return np.array([k * math.pi / 20 for k in range(1, 20)])
