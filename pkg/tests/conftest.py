"""Shared pytest plumbing: the acceptance-criteria result report.

Acceptance tests register one verdict per criterion; the terminal summary
then prints one ``ACCEPTANCE <id> ...: PASS|FAIL`` line per criterion so
the verdicts are visible even under output capture.
"""

_ACCEPTANCE_RESULTS = {}
_ORDER = ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "F"]


def record_acceptance(ident, name, passed, detail=""):
    _ACCEPTANCE_RESULTS[str(ident)] = (name, bool(passed), detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    known = [k for k in _ORDER if k in _ACCEPTANCE_RESULTS]
    extra = sorted(k for k in _ACCEPTANCE_RESULTS if k not in _ORDER)
    for key in known + extra:
        name, passed, detail = _ACCEPTANCE_RESULTS[key]
        line = f"ACCEPTANCE {key} ({name}): {'PASS' if passed else 'FAIL'}"
        if detail and not passed:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
