import pytest

# Filled by tests/test_acceptance.py: criterion number -> (passed, detail).
ACCEPTANCE = {}


@pytest.fixture
def criterion():
    def record(number: int, passed: bool, detail: str = ""):
        ACCEPTANCE[number] = (bool(passed), detail)
        line = f"{'PASS' if passed else 'FAIL'} criterion {number:>2}: {detail}"
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {number:>2}: {detail}")
