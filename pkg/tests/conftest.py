import logging
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("ektau", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ektau")

SQ2 = math.sqrt(2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def _quiet_logs():
    logging.getLogger("ektau").setLevel(logging.ERROR)
    yield


ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def accept():
    """Record the PASS/FAIL line of an acceptance criterion (printed in the session summary)."""

    def record(n: int, ok: bool, text: str) -> bool:
        line = f"[criterion {n:2d}] {'PASS' if ok else 'FAIL'}  {text}"
        ACCEPTANCE[n] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
