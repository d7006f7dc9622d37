import pytest

from golden_games._backend import available_backends

BACKENDS = available_backends()


@pytest.fixture(params=sorted(BACKENDS))
def kernels(request):
    """Each available kernel implementation in turn."""
    return BACKENDS[request.param]


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one pass/fail line per acceptance criterion."""

    def record(criterion, passed, detail, soft=False):
        status = "PASS" if passed else ("SOFT-FAIL" if soft else "FAIL")
        line = f"{criterion:<34} {status:<9} {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
