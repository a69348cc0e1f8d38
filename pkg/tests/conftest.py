import csv
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"


def read_golden(name: str) -> list[dict]:
    with open(GOLDEN / name, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="session")
def golden():
    return read_golden


_criteria: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        _criteria[name] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split("_")[2])):
        outcome, seconds = _criteria[name]
        label = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"{label:7} {name} ({seconds:.1f}s)")
