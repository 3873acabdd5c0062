"""Shared fixtures and the acceptance-criteria summary hook."""

CRITERION_RESULTS = {}


def record_criterion(number, ok, detail):
    """Register the outcome of one acceptance criterion for the summary."""
    CRITERION_RESULTS[number] = (bool(ok), detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERION_RESULTS):
        ok, detail = CRITERION_RESULTS[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict} - {detail}")
