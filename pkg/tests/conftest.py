"""Shared pytest plumbing for the acceptance report."""

ACCEPTANCE_REPORTS = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_REPORTS:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in sorted(ACCEPTANCE_REPORTS):
            terminalreporter.write_line(line)
