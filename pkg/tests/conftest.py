import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gwzero.bundled import load_bundled  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def p1():
    return load_bundled("p1")


@pytest.fixture(scope="session")
def p2():
    return load_bundled("p2")


@pytest.fixture(scope="session")
def p3():
    return load_bundled("p3")


@pytest.fixture(scope="session")
def p1xp1():
    return load_bundled("p1xp1")


@pytest.fixture(scope="session")
def orbifold():
    return load_bundled("orbifold_p13")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
