import pytest

_REPORT: list[str] = []


@pytest.fixture
def report():
    """Collects one summary line per acceptance check; printed at the end of the run."""

    def emit(line: str):
        print(line)
        _REPORT.append(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if _REPORT:
        terminalreporter.section("acceptance")
        for line in _REPORT:
            terminalreporter.write_line(line)
