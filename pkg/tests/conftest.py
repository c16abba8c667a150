import pytest

_RESULTS = {}


class CriterionLog:
    def record(self, number, ok, detail):
        _RESULTS[number] = (bool(ok), detail)
        print(f"CRITERION {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        return bool(ok)


@pytest.fixture
def criterion():
    return CriterionLog()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        ok, detail = _RESULTS[number]
        terminalreporter.write_line(f"CRITERION {number:>2}: {'PASS' if ok else 'FAIL'} - {detail}")
