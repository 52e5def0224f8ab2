import os
import re
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    detail = dict(report.user_properties).get("detail", "")
    if report.when == "call" or report.failed:
        status = "PASS" if report.passed else "FAIL"
        if k not in _ACCEPTANCE or status == "FAIL":
            _ACCEPTANCE[k] = (status, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        status, detail = _ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {status}  {detail}")


@pytest.fixture(scope="session")
def fixture_judgments():
    from fixtures import full_fixture_judgments

    return full_fixture_judgments()
