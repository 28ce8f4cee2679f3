"""Shared pytest configuration.

The acceptance tests record one human-readable PASS/FAIL line per criterion;
this hook replays them in the terminal summary so the gate's verdict is
visible even though pytest captures stdout of passing tests.
"""

ACCEPTANCE_RESULTS: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_RESULTS.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
