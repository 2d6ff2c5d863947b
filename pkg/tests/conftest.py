import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from randfa.automata import Dfa, Semiautomaton

# numba compiles on first call; keep hypothesis from timing that
settings.register_profile("randfa", deadline=None)
settings.load_profile("randfa")

# D*: delta(0,.)=(1,2), delta(1,.)=(1,3), delta(2,.)=(1,3), delta(3,.)=(3,3)
DSTAR_TABLE = [[1, 2], [1, 3], [1, 3], [3, 3]]


@pytest.fixture
def dstar_semi():
    return Semiautomaton(DSTAR_TABLE)


@pytest.fixture
def dstar():
    """D* with A = {3}."""
    return Dfa.from_table(DSTAR_TABLE, [0, 0, 0, 1])


@st.composite
def dfas(draw, max_n=8, max_k=3, min_n=1):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, max_k))
    flat = draw(st.lists(st.integers(0, n - 1), min_size=n * k, max_size=n * k))
    acc = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return Dfa.from_table(np.array(flat).reshape(n, k), acc)


@st.composite
def dfa_state_word(draw, max_len=12):
    d = draw(dfas())
    q = draw(st.integers(0, d.n - 1))
    w = draw(st.lists(st.integers(0, d.k - 1), max_size=max_len))
    return d, q, w


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
