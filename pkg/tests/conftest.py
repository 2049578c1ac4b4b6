import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion, emitted after the test run."""
    module = next(
        (m for name, m in sys.modules.items()
         if name.rpartition(".")[2] == "test_acceptance" and m is not None),
        None,
    )
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        status, summary = results[n]
        terminalreporter.write_line(f"criterion {n:2d} {status}  {summary}")
