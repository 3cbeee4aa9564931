import time

import acceptance_log

SUITE_BUDGET_S = 30.0


def pytest_sessionstart(session):
    acceptance_log.SESSION_START = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - acceptance_log.SESSION_START
    session.config._suite_elapsed = elapsed
    if elapsed >= SUITE_BUDGET_S and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = acceptance_log.lines()
    elapsed = getattr(config, "_suite_elapsed", None)
    if not lines and elapsed is None:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
    if elapsed is not None:
        ok = elapsed < SUITE_BUDGET_S
        terminalreporter.write_line(
            f"[{'PASS' if ok else 'FAIL'}] suite runtime: {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)"
        )
