from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bcring.fixtures import MATRICES, fixture

SMALL_FIXTURES = ["u23", "u24", "u35", "k4", "loop", "parallel", "boolean3", "mixed"]


@pytest.fixture
def u23():
    return fixture("u23")


@pytest.fixture
def u24():
    return fixture("u24")


@pytest.fixture
def k4():
    return fixture("k4")


@pytest.fixture
def loop():
    return fixture("loop")


@pytest.fixture
def parallel():
    return fixture("parallel")


@pytest.fixture(params=SMALL_FIXTURES)
def any_fixture(request):
    return fixture(request.param)


rationals = st.builds(
    Fraction, st.integers(-5, 5), st.integers(1, 4)
)


@st.composite
def matrices(draw, max_d=3, max_n=6, min_n=1):
    n = draw(st.integers(min_n, max_n))
    d = draw(st.integers(1, max_d))
    # small integers keep dependencies (parallel pairs, loops) common
    entry = st.one_of(st.integers(-2, 2).map(Fraction), rationals)
    return [[draw(entry) for _ in range(n)] for _ in range(d)]


__all__ = ["MATRICES", "matrices"]


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[k])
