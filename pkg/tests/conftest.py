import pytest

_results = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None and (rep.when == "call" or rep.failed):
        number, title = mark.args
        _results.append((number, title, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(_results, key=lambda r: (int(r[0]), r[1])):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}")
