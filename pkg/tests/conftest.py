import os
import sys

import pytest

# make the oracles importable as a plain module
sys.path.insert(0, os.path.dirname(__file__))

# criterion number -> list of (scope, outcome, detail)
_CRITERIA: dict[int, list[tuple[str, str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, scope='full'): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and report.skipped):
        detail = dict(item.user_properties).get("detail", "")
        if report.skipped:
            state, detail = "skipped", str(report.longrepr[-1]) if isinstance(report.longrepr, tuple) else ""
        else:
            state = report.outcome
        scope = mark.kwargs.get("scope", "full")
        _CRITERIA.setdefault(mark.args[0], []).append((scope, state, detail))


def _status(entries):
    states = {scope: state for scope, state, _ in entries}
    if any(state == "failed" for state in states.values()):
        return "FAIL"
    if states.get("full") == "passed":
        return "PASS"
    if states.get("partial") == "passed":
        return "PARTIAL"
    return "NOT RUN"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        entries = _CRITERIA[n]
        details = "; ".join(d for _, _, d in entries if d)
        terminalreporter.write_line(f"criterion {n}: {_status(entries)}  {details}")
