import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ellcensus.registry import load_registry  # noqa: E402

REGISTRY = load_registry()


@pytest.fixture(scope="session")
def registry():
    return REGISTRY


@pytest.fixture(scope="session")
def bachet():
    return REGISTRY["1728.n4"]


@pytest.fixture(scope="session")
def non_cm():
    return REGISTRY["1728.w1"]


@pytest.fixture(scope="session")
def congruent():
    return REGISTRY["32.a3"]


@pytest.fixture(scope="session")
def mordell_one():
    return REGISTRY["36a1"]


_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    _ACCEPTANCE[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[1]) if s.split("_")[1].isdigit() else 99):
        terminalreporter.write_line(f"{_ACCEPTANCE[name]}  {name}")
