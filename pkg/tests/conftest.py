import pytest

_verdicts = []


@pytest.fixture
def record():
    def _record(label, passed, detail=""):
        _verdicts.append((label, passed, detail))
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _verdicts:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
