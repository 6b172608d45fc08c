from __future__ import annotations

import re

_RESULTS: dict[int, tuple[str, str, str]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = dict(report.user_properties).get("detail", "")
        outcome = "PASS" if report.outcome == "passed" else "FAIL"
        _RESULTS[int(m.group(1))] = (outcome, m.group(2), detail)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS):
        outcome, name, detail = _RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d} {outcome}  {name}  {detail}".rstrip())
