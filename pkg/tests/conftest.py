import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from psilab.graph import complete, cycle, empty, path  # noqa: E402


@pytest.fixture
def p3():
    return path(3)


@pytest.fixture
def c8():
    return cycle(8)


@pytest.fixture
def k3():
    return complete(3)


@pytest.fixture
def two_k1():
    return empty(2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
