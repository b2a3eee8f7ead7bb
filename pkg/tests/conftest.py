import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qplex.sic import standard_sic

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# filled by test_acceptance.py, printed at the end of the session
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture(scope="session")
def sics():
    """Cached SIC systems for the dimensions the tests use."""
    return {d: standard_sic(d) for d in range(2, 9)}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[k]
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] {k:2d}. {title}: {detail}")
