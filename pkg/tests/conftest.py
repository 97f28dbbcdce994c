import pytest

ACCEPTANCE = {}


def record(k, name, ok):
    ACCEPTANCE[k] = (name, ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        name, ok = ACCEPTANCE[k]
        terminalreporter.write_line("criterion %2d %-48s %s" % (k, name, "PASS" if ok else "FAIL"))


@pytest.fixture
def acceptance():
    return record
