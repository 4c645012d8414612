import pytest
from hypothesis import strategies as st

from gaussdioph.gaussian import GaussianInt

ACCEPTANCE_LINES: list[str] = []


def gaussian(bound: int = 60, nonzero: bool = False):
    ints = st.integers(-bound, bound)
    s = st.builds(GaussianInt, ints, ints)
    return s.filter(bool) if nonzero else s


def box(bound: int):
    r = range(-bound, bound + 1)
    return [GaussianInt(a, b) for a in r for b in r if a or b]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def g():
    """Shorthand parser for Gaussian literals."""
    from gaussdioph.gaussian import parse

    return parse
