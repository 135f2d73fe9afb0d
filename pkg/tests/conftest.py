import os

# hypothesis profile: deterministic and without wall-clock deadlines (exact arithmetic is slow to warm up)
from hypothesis import settings

settings.register_profile("webcurv", deadline=None, derandomize=True, print_blob=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "webcurv"))

_TITLES = {}
_STATUS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion this test covers")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            n = m.args[0]
            _TITLES[n] = m.args[1] if len(m.args) > 1 else _TITLES.get(n, "")
            item.user_properties.append(("criterion", n))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        ok = report.passed and not hasattr(report, "wasxfail")
        _STATUS.setdefault(crit, []).append(ok)


def pytest_terminal_summary(terminalreporter):
    if not _STATUS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_STATUS):
        verdict = "PASS" if all(_STATUS[n]) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}  {_TITLES.get(n, '')}")
