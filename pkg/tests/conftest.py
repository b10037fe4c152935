import pytest

from cbvtc.data import load
from cbvtc.parser import parse_term

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def addmap():
    return load("addmap")


@pytest.fixture(scope="session")
def add_system():
    return load("add")


@pytest.fixture(scope="session")
def map_system():
    return load("map")


@pytest.fixture(scope="session")
def term(addmap):
    trs, _ = addmap
    return lambda text: parse_term(text, trs)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
