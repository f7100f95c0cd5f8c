import pytest

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion outcome for the terminal summary."""

    def record(name: str, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE.append((name, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {name}" + (f"  ({detail})" if detail else ""))
