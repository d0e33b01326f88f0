import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import corpus  # noqa: E402

_CRITERIA = {}


@pytest.fixture(scope="session")
def random_corpus():
    return corpus()


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    label = dict(report.user_properties).get("criterion")
    if label is None:
        return
    ok = report.passed
    prev = _CRITERIA.get(label, True)
    _CRITERIA[label] = prev and ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA):
        terminalreporter.write_line(f"{'PASS' if _CRITERIA[label] else 'FAIL'}  {label}")
