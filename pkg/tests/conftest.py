import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_line():
    def record(number, ok, detail):
        line = "%s criterion %s: %s" % ("PASS" if ok else "FAIL", number, detail)
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
