import pytest

_LINES = []


@pytest.fixture
def report_criterion():
    """Record a one-line verdict printed in the terminal summary."""

    def _report(number, passed, text):
        _LINES.append((number, f"criterion {number}: {'PASS' if passed else 'FAIL'}  {text}"))

    return _report


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_LINES):
        terminalreporter.write_line(line)
