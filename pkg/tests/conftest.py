import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_LINES = []


@pytest.fixture
def report():
    """Record one summary line (shown at the end of the run)."""
    return _LINES.append


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
