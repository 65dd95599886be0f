import pytest

from nonauto import corpus
from nonauto.detectors import HorizonParams

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    """Log one PASS/FAIL line for an acceptance criterion, then assert it."""

    def _record(label: str, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return _record


@pytest.fixture
def params():
    return HorizonParams()


@pytest.fixture(scope="session")
def systems():
    return {name: corpus.load(name) for name in corpus.names()}
