from collections import defaultdict
from functools import lru_cache

import pytest

from ghzdistill.threshold import find_threshold

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key in report.keywords:
        if key.startswith("criterion_"):
            _outcomes[int(key.split("_")[1])].append((report.nodeid, report.outcome))


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.keywords[f"criterion_{mark.args[0]}"] = True


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        results = _outcomes[num]
        failed = [nid.split("::")[-1] for nid, outcome in results if outcome != "passed"]
        if failed:
            line = f"criterion {num}: FAIL ({len(failed)} of {len(results)} checks failed: {', '.join(failed)})"
        else:
            line = f"criterion {num}: PASS ({len(results)} checks)"
        terminalreporter.write_line(line)


@lru_cache(maxsize=None)
def _threshold(protocol, q, m, n):
    return find_threshold(protocol, q, m, n)


@pytest.fixture(scope="session")
def threshold():
    """Cached threshold search shared by every test in the session."""
    return _threshold
