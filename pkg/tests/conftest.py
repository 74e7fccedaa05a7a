import pytest

# criterion number -> (passed, detail); filled by test_acceptance.py
VERDICTS: dict[int, tuple[str, str]] = {}


def record(criterion: int, passed: bool | None, detail: str) -> None:
    VERDICTS[criterion] = ("SKIP" if passed is None else "PASS" if passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(VERDICTS):
        status, detail = VERDICTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {detail}")
