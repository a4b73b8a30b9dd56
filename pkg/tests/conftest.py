import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_acceptance: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        _acceptance.setdefault(name, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda n: int(n.split("_")[2])):
        ok = all(o == "passed" for o in _acceptance[name])
        number = name.split("_")[2]
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {number} ({label}): {'PASS' if ok else 'FAIL'}")
