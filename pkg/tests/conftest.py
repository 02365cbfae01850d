"""Shared test helpers and the acceptance-criteria report.

test_acceptance.py registers one line per criterion here; the summary hook
prints them after the run so pass/fail status is visible at a glance.
"""

from contextlib import contextmanager

_criteria = {}


def record_criterion(num, desc, passed, detail=""):
    _criteria[num] = (desc, bool(passed), detail)


@contextmanager
def criterion(num, desc):
    """Run one acceptance check; always leaves a PASS/FAIL line behind."""
    rec = {"ok": False, "detail": ""}
    try:
        yield rec
    except BaseException as exc:
        record_criterion(num, desc, False, rec["detail"] or f"errored: {exc!r}")
        raise
    record_criterion(num, desc, rec["ok"], rec["detail"])
    assert rec["ok"], f"criterion {num} ({desc}): {rec['detail']}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        desc, passed, detail = _criteria[num]
        tag = "PASS" if passed else "FAIL"
        line = f"[{tag}] criterion {num:2d}: {desc}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
