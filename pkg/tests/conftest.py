import pytest

ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance_line(request):
    """Callable recording the one-line verdict of an acceptance criterion."""

    def record(number, passed, detail):
        ACCEPTANCE_LINES[number] = f"{'PASS' if passed else 'FAIL'} criterion {number:2d}: {detail}"
        print(ACCEPTANCE_LINES[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
