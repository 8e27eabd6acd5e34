import pytest

_RESULTS: dict[int, dict[str, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run slow checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): acceptance criterion number")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    checks = _RESULTS.setdefault(int(mark.args[0]), {})
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        checks[item.name] = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
    elif rep.failed:
        checks[item.name] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        outcomes = _RESULTS[number]
        values = set(outcomes.values())
        verdict = "FAIL" if "FAIL" in values else ("SKIP" if values == {"SKIP"} else "PASS")
        names = ", ".join(sorted(outcomes))
        terminalreporter.write_line(f"{verdict}  criterion {number:>2}  ({names})")
