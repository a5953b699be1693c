"""Shared fixtures plus the acceptance summary printed after the run."""

import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_record():
    """Collector for one pass/fail line per acceptance criterion.

    Usage: acceptance_record(name, ok, detail); the lines surface in the
    terminal summary regardless of capture settings.
    """

    def rec(name: str, ok: bool, detail: str = ""):
        _ACCEPTANCE_LINES.append((name, bool(ok), detail))

    return rec


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, ok, detail in _ACCEPTANCE_LINES:
        line = f"[acceptance] {name}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
