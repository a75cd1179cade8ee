"""Prints one pass/fail line per acceptance criterion at the end of a run."""

import re

CRITERIA = {
    1: "universal identity suite",
    2: "Hopf suite",
    3: "w constants",
    4: "generator criterion vs full-set-of-sections oracle",
    5: "equivalence round trip",
    6: "fiber trichotomy",
    7: "Weil restriction oracle",
    8: "CLI determinism",
}

_outcomes = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_", report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    failed = report.failed or (report.when == "call" and report.outcome != "passed")
    if failed:
        _outcomes[k] = False
    elif report.when == "call":
        _outcomes.setdefault(k, True)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k, title in CRITERIA.items():
        if k in _outcomes:
            status = "PASS" if _outcomes[k] else "FAIL"
        else:
            status = "NOT RUN"
        terminalreporter.write_line(f"criterion {k} ({title}): {status}")
