import pytest

from dnwaveguide import SolverConfig

# A light ladder keeps the 2D unit tests to a few seconds each.
QUICK = SolverConfig(L=8.0, ladder=(8, 16, 32))


@pytest.fixture
def quick_cfg():
    return QUICK


ACCEPTANCE = {}


def record(number: int, ok: bool, detail: str) -> None:
    """Store and print one acceptance line; the caller asserts afterwards."""
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
