import pathlib
import sys

import pytest

from specshare import NetworkGeometry, Powers, SensingConfig

sys.path.insert(0, str(pathlib.Path(__file__).parent))

_criteria = {}


@pytest.fixture
def geom():
    return NetworkGeometry.equidistant(2.0, alpha=2.0, gain_over_noise=10.0)


@pytest.fixture
def cfg():
    return SensingConfig(pd_target=0.9, k=100.0, pr1=0.3)


@pytest.fixture
def powers():
    return Powers(1.0, 1.0)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _criteria.setdefault(value, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        outcomes = _criteria[number]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status} ({len(outcomes)} test(s))")
