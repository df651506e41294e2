import pytest

# 2^31 - 1: keeps elimination in int64 for the bulk oracle runs
FAST_PRIME = 2_147_483_647

ACCEPTANCE_LINES = []


def record(criterion: str, ok: bool, detail: str = ""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}{': ' + detail if detail else ''}")
    return ok


@pytest.fixture
def accept():
    """Record one acceptance line, then assert it."""
    def check(criterion, ok, detail=""):
        record(criterion, ok, detail)
        assert ok, f"{criterion}: {detail}"
    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
