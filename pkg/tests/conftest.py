import pytest

_ACCEPTANCE: list = []


@pytest.fixture
def acceptance_log():
    """Record one line per acceptance criterion; printed in the terminal summary."""

    def record(criterion: str, ok: bool, detail: str) -> None:
        _ACCEPTANCE.append((criterion, ok, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")
