import pytest

from qnetrel.graph import Network

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LOG: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LOG:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


@pytest.fixture
def bridge():
    return Network.from_edges(2, [(0, 1, 0.25)])


@pytest.fixture
def triangle():
    return Network.from_edges(3, [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5)])


@pytest.fixture
def path3():
    return Network.from_edges(3, [(0, 1, 0.5), (1, 2, 0.5)])
