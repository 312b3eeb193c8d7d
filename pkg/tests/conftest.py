import re

import pytest

# One detail string per acceptance criterion, filled in by the tests as
# they run and replayed as a status block after the terminal summary.
_criterion_details = {}

_CRITERION = re.compile(r"test_criterion_0*(\d+)")


@pytest.fixture
def note():
    def record(number, detail):
        _criterion_details[number] = detail

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for status, label in (
        ("passed", "PASS"),
        ("skipped", "SKIP"),
        ("failed", "FAIL"),
        ("error", "FAIL"),
    ):
        for report in terminalreporter.stats.get(status, []):
            m = _CRITERION.search(getattr(report, "nodeid", ""))
            if m:
                outcomes[int(m.group(1))] = label
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(outcomes):
        line = f"[criterion {n}] {outcomes[n]}"
        detail = _criterion_details.get(n)
        if detail:
            line += f" - {detail}"
        terminalreporter.write_line(line)
