import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from youngshap import Game, from_paper_order  # noqa: E402
from youngshap.kernels import available_backends, using_backend  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(lo=-10, hi=10):
    return st.builds(Fraction, st.integers(lo, hi), st.sampled_from([1, 2, 3, 4, 6]))


@st.composite
def games(draw, min_n=1, max_n=4, values=None):
    n = draw(st.integers(min_n, max_n))
    vals = values if values is not None else rationals()
    table = [Fraction(0)] + draw(st.lists(vals, min_size=(1 << n) - 1, max_size=(1 << n) - 1))
    return Game.from_fractions(n, table)


@st.composite
def int_games(draw, min_n=1, max_n=4, lo=-2, hi=2):
    n = draw(st.integers(min_n, max_n))
    return Game(n, [0] + draw(st.lists(st.integers(lo, hi), min_size=(1 << n) - 1, max_size=(1 << n) - 1)))


@pytest.fixture(params=available_backends())
def backend(request):
    with using_backend(request.param):
        yield request.param


@pytest.fixture
def ex1():
    return from_paper_order(3, [0, 0, 0, 3, 1, 2, 3])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
