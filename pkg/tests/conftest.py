from __future__ import annotations

from collections import OrderedDict
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_criteria: "OrderedDict[int, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")
    config.addinivalue_line("markers", "slow: exhaustive sweeps that take tens of seconds")
    config.addinivalue_line("markers", "acceptance: acceptance criteria")


@pytest.fixture
def data_dir():
    return DATA


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        num, title = mark.args
        row = _criteria.setdefault(num, {"title": title, "passed": 0, "failed": 0, "failing": []})
        if rep.passed:
            row["passed"] += 1
        elif not rep.skipped:
            row["failed"] += 1
            row["failing"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria):
        row = _criteria[num]
        status = "PASS" if row["failed"] == 0 else "FAIL"
        total = row["passed"] + row["failed"]
        tr.write_line(f"criterion {num:>2} {row['title']}: {status} ({row['passed']}/{total} checks)")
        for name in row["failing"]:
            tr.write_line(f"    failing: {name}")
