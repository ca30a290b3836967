"""Collect acceptance outcomes and print one line per criterion."""

from collections import OrderedDict

_RESULTS: "OrderedDict[int, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            n, title = mark.args
            entry = _RESULTS.setdefault(n, {"title": title, "failed": [], "count": 0})
            entry["count"] += 1
            item.user_properties.append(("criterion", n))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.failed or (report.when == "call" and report.skipped):
        failed = _RESULTS[props["criterion"]]["failed"]
        if report.nodeid not in failed:
            failed.append(report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, entry in sorted(_RESULTS.items()):
        status = "PASS" if not entry["failed"] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {entry['title']} ({entry['count']} checks)")
        for nodeid in entry["failed"]:
            terminalreporter.write_line(f"    failing: {nodeid}")
