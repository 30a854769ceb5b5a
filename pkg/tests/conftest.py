import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qtqft import BoxContext  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def box22():
    return BoxContext(2, 2)


@pytest.fixture
def box11():
    return BoxContext(1, 1)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
