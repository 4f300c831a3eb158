import os
import sys
import warnings

import pytest

sys.path.insert(0, os.path.dirname(__file__))
warnings.filterwarnings("ignore", message="The TBB threading layer")

# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = {}


def record(criterion, ok, detail):
    ACCEPTANCE_LINES[criterion] = "criterion %-2s %s  %s" % (criterion, "PASS" if ok else "FAIL", detail)


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int("".join(c for c in k if c.isdigit())), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
