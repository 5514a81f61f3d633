import pytest

from divmodule import groebner


@pytest.fixture(autouse=True, scope="session")
def audit_every_basis():
    """Every Groebner basis computed during the tests is checked for the S-pair criterion."""
    previous = groebner.AUDIT
    groebner.AUDIT = True
    yield
    groebner.AUDIT = previous


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
