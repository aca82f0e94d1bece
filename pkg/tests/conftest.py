from __future__ import annotations

import pytest

# (number, title, passed, detail) per acceptance criterion, filled by test_acceptance
ACCEPTANCE: list[tuple[int, str, bool, str]] = []


@pytest.fixture
def record():
    def _record(number: int, title: str, passed: bool, detail: str) -> None:
        ACCEPTANCE.append((number, title, bool(passed), detail))
        print(f"{'PASS' if passed else 'FAIL'} [{number:2d}] {title}: {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} [{number:2d}] {title}: {detail}")
