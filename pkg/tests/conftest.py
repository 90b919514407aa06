def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        if k in RESULTS:
            verdict = "PASS" if RESULTS[k] else "FAIL"
            terminalreporter.write_line(f"criterion {k}: {verdict} ({CRITERIA[k][1]})")
