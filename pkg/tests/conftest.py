import pytest

_CRITERIA: list[str] = []


@pytest.fixture
def record():
    """Print and keep one PASS/FAIL line for an acceptance criterion."""

    def _record(n, ok, detail=""):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f"  {detail}"
        _CRITERIA.append(line)
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
