import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from crnobstruct.network import load_network  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def net4():
    return load_network(FIXTURES / "paper-4sp.crn")


@pytest.fixture(scope="session")
def core3():
    return load_network(FIXTURES / "paper-3sp-core.crn")


@pytest.fixture(scope="session")
def net6():
    return load_network(FIXTURES / "paper-6sp-ma.crn")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.pytest_terminal_lines():
        terminalreporter.write_line(line)
