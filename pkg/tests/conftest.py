def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    stats = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid:
                tail = nodeid.split("test_criterion_")[1]
                num = int(tail.split("_")[0])
                prev = stats.get(num)
                stats[num] = ("FAIL" if outcome in ("failed", "error")
                              else prev or "PASS")
    if stats:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria summary:")
        for n in sorted(stats):
            terminalreporter.write_line(
                "  criterion %2d: %s" % (n, stats[n]))
