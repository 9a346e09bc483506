from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# -- acceptance criteria report ----------------------------------------------------------
#
# Tests marked @pytest.mark.criterion(n, "summary") are collected and printed
# as one line per criterion at the end of the run.  A criterion passes only
# when every test carrying its number passes; a strict xfail counts as failing.

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, summary): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marks = [tuple(m.args) for m in item.iter_markers("criterion")]
    if not marks:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        result = "xfail" if hasattr(rep, "wasxfail") else rep.outcome
        for n, summary in marks:
            _CRITERIA.setdefault(n, {"summary": summary, "outcomes": []})["outcomes"].append(result)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        row = _CRITERIA[n]
        outs = row["outcomes"]
        if outs and all(o == "passed" for o in outs):
            status = "PASS"
        elif "xfail" in outs and all(o in ("passed", "xfail") for o in outs):
            status = "FAIL (strict xfail, analysis in the decisions ledger)"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status} - {row['summary']}")
