import pytest

_CRITERIA_LINES = []


@pytest.fixture
def criterion_line():
    """Record one summary line per acceptance criterion; printed at the end of the run."""

    def record(number, label, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"criterion {number:<3} {status}  {label}"
        if detail:
            line += f"  [{detail}]"
        _CRITERIA_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _CRITERIA_LINES:
        terminalreporter.write_line(line)
