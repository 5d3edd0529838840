"""Shared pytest plumbing.

The end-to-end gate in test_acceptance.py records one line per scripted
check; this hook replays those lines as a section of the terminal
summary so the whole gate is readable at a glance in any test run.
"""

ACCEPTANCE_LINES = []


def record_criterion(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
