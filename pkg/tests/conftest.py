import pytest

from pretorsion.typea import TypeA


@pytest.fixture(scope="session")
def ka2():
    return TypeA(2)


@pytest.fixture(scope="session")
def ka3():
    return TypeA(3)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(LINES):
            terminalreporter.write_line(LINES[k])
