import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from eopack.canon import corpus  # noqa: E402


@pytest.fixture(scope="session")
def corpus7():
    return corpus(7)


@pytest.fixture(scope="session")
def small_corpus():
    return corpus(5)


_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance" in report.nodeid and name.startswith("test_criterion_"):
        _criteria[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split("_")[2])):
        number = name.split("_")[2]
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {number} ({label}): {_criteria[name]}")
