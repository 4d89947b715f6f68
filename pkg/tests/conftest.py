import sys

import pytest

from ghostclass import build_root_system


@pytest.fixture(scope="session")
def rs5():
    return build_root_system(5)


@pytest.fixture(scope="session")
def rs4():
    return build_root_system(4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
