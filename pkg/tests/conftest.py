import sys


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance-criterion verdicts collected during the run."""
    module = sys.modules.get("test_acceptance")
    verdicts = getattr(module, "VERDICTS", None) if module else None
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for line in sorted(verdicts):
            terminalreporter.write_line(line)
