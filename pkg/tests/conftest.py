import acceptance_log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_log.lines:
        terminalreporter.section("acceptance gate")
        for line in acceptance_log.lines:
            terminalreporter.write_line(line)
