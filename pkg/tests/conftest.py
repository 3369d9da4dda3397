import pytest

ACCEPTANCE_RESULTS = []


@pytest.fixture
def criterion():
    """Record a pass/fail line for an acceptance criterion, then assert it."""

    def record(number, title, ok, detail=""):
        ACCEPTANCE_RESULTS.append((number, title, bool(ok), detail))
        assert ok, f"criterion {number} ({title}) failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: int(r[0])):
        line = f"[{'PASS' if ok else 'FAIL'}] {number:>4} {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
