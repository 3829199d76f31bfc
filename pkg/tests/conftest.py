"""One summary line per acceptance criterion, printed after the test run."""

import re

_CRIT = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    labels = {}
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = _CRIT.search(getattr(rep, "nodeid", ""))
            if not m:
                continue
            if getattr(rep, "when", "call") not in ("call", "setup"):
                continue
            num = int(m.group(1))
            labels[num] = m.group(2).replace("_", " ")
            outcomes[num] = outcomes.get(num, True) and status == "passed"
    if not outcomes:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for num in sorted(outcomes):
        flag = "PASS" if outcomes[num] else "FAIL"
        terminalreporter.write_line(f"  [{flag}] criterion {num}: {labels[num]}")
