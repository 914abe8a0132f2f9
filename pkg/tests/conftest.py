"""Print the one-line acceptance verdicts in the terminal summary, where
they survive pytest's capture; a criterion that failed before reporting
gets a [FAIL] line derived from its test id."""

import re
import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    if mod is None:
        return
    lines = list(getattr(mod, "LINES", []))
    reported = {re.search(r"acceptance \d+", ln).group() for ln in lines
                if re.search(r"acceptance \d+", ln)}
    for rep in terminalreporter.stats.get("failed", []):
        m = re.search(r"test_acceptance_0?(\d+)", rep.nodeid)
        if m and f"acceptance {int(m.group(1))}" not in reported:
            lines.append(f"[FAIL] acceptance {int(m.group(1))}: "
                         f"assertion failed, see {rep.nodeid}")
    if not lines:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for ln in sorted(lines, key=lambda s: int(re.search(r"\d+", s).group())):
        terminalreporter.write_line(ln)
