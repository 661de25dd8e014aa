"""Shared test plumbing.

Tests marked with @pytest.mark.criterion(N, "description") feed a
per-criterion PASS/FAIL summary printed after the run, so the acceptance
gate reads as one line per criterion regardless of how many test
functions implement it.
"""

import collections

import pytest

_RESULTS = collections.defaultdict(list)
_DESCRIPTIONS = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(number, description): acceptance-criterion membership",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number = marker.args[0]
    if len(marker.args) > 1:
        _DESCRIPTIONS.setdefault(number, marker.args[1])
    if hasattr(report, "wasxfail"):
        status = "xfail" if report.skipped else "xpass"
    elif report.passed:
        status = "passed"
    elif report.failed:
        status = "failed"
    else:
        status = "skipped"
    _RESULTS[number].append((item.name, status))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        statuses = [status for _, status in _RESULTS[number]]
        if any(s in ("failed", "xpass") for s in statuses):
            verdict = "FAIL"
        elif any(s == "xfail" for s in statuses):
            verdict = "FAIL (documented shortfall, see README limitations)"
        elif all(s == "passed" for s in statuses):
            verdict = "PASS"
        else:
            verdict = "SKIPPED"
        desc = _DESCRIPTIONS.get(number, "")
        terminalreporter.write_line(f"[criterion {number}] {verdict} - {desc}")
