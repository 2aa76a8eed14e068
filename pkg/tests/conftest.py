import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qblowup import GREVLEX, PolyRing  # noqa: E402


@pytest.fixture
def R2():
    return PolyRing(("x", "y"), GREVLEX)


@pytest.fixture
def R3():
    return PolyRing(("x", "y", "z"), GREVLEX)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    RESULTS = getattr(module, "RESULTS", None)
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
