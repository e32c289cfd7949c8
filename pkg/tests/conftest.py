import contextlib

import pytest

ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def record(number, title):
        try:
            yield
        except BaseException:
            ACCEPTANCE.append((number, "FAIL", title))
            raise
        ACCEPTANCE.append((number, "PASS", title))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title}")
