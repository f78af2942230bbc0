import numpy as np
import pytest
from hypothesis import strategies as st

from captrans import catalog
from captrans.setfun import SetVector, Universe, maxplus_inverse


@pytest.fixture
def additive_pair():
    return catalog.additive_pair()


@pytest.fixture
def lack_pair():
    return catalog.lack_pair()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@st.composite
def capacities(draw, min_n=1, max_n=4, normalized=False):
    """Random capacities via a nonnegative (max,+)-transform."""
    n = draw(st.integers(min_n, max_n))
    u = Universe(n)
    m = draw(st.lists(st.floats(0, 1, allow_nan=False), min_size=u.size, max_size=u.size))
    m[0] = 0.0
    mu = maxplus_inverse(SetVector(u, m, "maxplus"))
    if normalized and mu.values[-1] > 0:
        from captrans.setfun import validate_capacity

        mu = validate_capacity(mu.values / mu.values[-1], u)
    return mu


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE = {}


def record(criterion, ok, detail=""):
    ACCEPTANCE[criterion] = (bool(ok), detail)
    print(f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
