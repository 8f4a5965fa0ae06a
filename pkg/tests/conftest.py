from __future__ import annotations

import pytest

# criterion number -> (title, [outcomes of its test cases])
_ACCEPTANCE: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, title = marker.args
        _ACCEPTANCE.setdefault(number, (title, []))[1].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, results = _ACCEPTANCE[number]
        verdict = "PASS" if results and all(results) else "FAIL"
        terminalreporter.write_line(
            f"criterion {number} {verdict}: {title} ({sum(results)}/{len(results)} cases)")
