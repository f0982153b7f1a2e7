import sys
import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from oresmooth.sampling import make_rng

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "oresmooth",
    derandomize=True,
    deadline=None,
    max_examples=30,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("oresmooth")

_criteria = {}
_started = {}
SUITE_LIMIT = 60.0


def pytest_sessionstart(session):
    _started["t"] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _started.get("t", time.perf_counter())
    _started["elapsed"] = elapsed
    if 9 in _criteria and elapsed >= SUITE_LIMIT:
        _criteria[9] = False
        session.exitstatus = 1


@pytest.fixture
def rng():
    return make_rng()


def pytest_runtest_logreport(report):
    number = dict(report.user_properties).get("criterion")
    if number is None:
        return
    if report.when == "call" or report.failed:
        _criteria[number] = _criteria.get(number, True) and report.passed


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    elapsed = _started.get("elapsed")
    if elapsed is not None:
        terminalreporter.write_line(f"suite wall-clock {elapsed:.1f} s (limit {SUITE_LIMIT:.0f} s)")
    for number in sorted(_criteria):
        status = "PASS" if _criteria[number] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}")
