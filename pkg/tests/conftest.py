import pytest

from ghostw.osp import build_osp


@pytest.fixture(scope="session")
def osp1():
    return build_osp(1)


@pytest.fixture(scope="session")
def osp2():
    return build_osp(2)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
