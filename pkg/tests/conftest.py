import pytest

_ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion for the summary table."""
    number = request.node.get_closest_marker("criterion").args[0]
    _ACCEPTANCE.setdefault(number, [])

    def record(ok, detail):
        _ACCEPTANCE[number].append((bool(ok), detail))
        return ok

    return record


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        checks = _ACCEPTANCE[number]
        status = "PASS" if checks and all(ok for ok, _ in checks) else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}")
        for ok, detail in checks:
            terminalreporter.write_line(f"    [{'ok' if ok else 'FAIL'}] {detail}")
