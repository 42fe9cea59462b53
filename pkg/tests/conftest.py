import sys
from collections import defaultdict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# wall-clock budget per acceptance criterion, in seconds
BUDGETS = {1: 5, 2: 10, 3: 60, 5: 120, 8: 120}

_outcomes = defaultdict(list)
_durations = defaultdict(float)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    _durations[crit] += report.duration
    if report.when == "call" or report.failed:
        _outcomes[crit].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_outcomes):
        seconds = _durations[crit]
        ok = all(_outcomes[crit])
        budget = BUDGETS.get(crit)
        note = f"{seconds:.1f}s"
        if budget is not None:
            note += f" of {budget}s"
            ok = ok and seconds < budget
        terminalreporter.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'} ({note})")
