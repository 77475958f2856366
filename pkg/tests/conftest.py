import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_acceptance: dict[str, tuple[str, str, float]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[report.nodeid] = (report.outcome, report.nodeid.split("::")[-1], report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    from test_acceptance import CRITERIA

    titles = {fn.__name__: (key, title) for key, title, fn in CRITERIA}
    terminalreporter.section("acceptance criteria")
    for outcome, name, duration in _acceptance.values():
        key, title = titles.get(name, (name, ""))
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{key:5} {verdict}  {title}  ({duration:.2f}s)")
