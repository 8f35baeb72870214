from fractions import Fraction

import pytest
from hypothesis import strategies as st

from suffstat.dist import Dist, Predicate

F = Fraction


@pytest.fixture
def urn():
    """The 8-ball urn: one a, four b, three c."""
    return Dist({"a": F(1, 8), "b": F(1, 2), "c": F(3, 8)})


@st.composite
def dists(draw, labels=("a", "b", "c"), min_size=1, full=False):
    xs = list(labels) if full else draw(
        st.lists(st.sampled_from(labels), min_size=min_size, max_size=len(labels), unique=True))
    ws = [draw(st.integers(1, 9)) for _ in xs]
    total = sum(ws)
    return Dist({x: F(w, total) for x, w in zip(xs, ws)})


@st.composite
def predicates(draw, carrier):
    vals = {}
    for x in carrier:
        d = draw(st.integers(1, 16))
        vals[x] = F(draw(st.integers(0, d)), d)
    return Predicate(vals)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = next((m for name, m in list(sys.modules.items()) if name.endswith("test_acceptance")), None)
    got = [mod.RESULTS[k] for k in sorted(mod.RESULTS)] if mod else []
    if got:
        terminalreporter.section("acceptance criteria")
        for line in got:
            terminalreporter.write_line(line)
