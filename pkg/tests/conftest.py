import os

from hypothesis import HealthCheck, settings, strategies as st

from ac_lattice import Antichain, Interval, Universe, join, max_ac, meet

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=200,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


@st.composite
def antichains(draw, n=None, max_n=4):
    if n is None:
        n = draw(st.integers(0, max_n))
    u = Universe(n)
    family = draw(st.lists(st.integers(0, u.full), max_size=8))
    return max_ac(family, u)


@st.composite
def antichain_pairs(draw, max_n=4):
    n = draw(st.integers(0, max_n))
    return draw(antichains(n)), draw(antichains(n))


@st.composite
def antichain_triples(draw, max_n=4):
    n = draw(st.integers(0, max_n))
    return draw(antichains(n)), draw(antichains(n)), draw(antichains(n))


@st.composite
def intervals(draw, max_n=4, min_n=0):
    n = draw(st.integers(min_n, max_n))
    a, b = draw(antichains(n)), draw(antichains(n))
    return Interval(meet(a, b), join(a, b))


def ac(n, *sets):
    """``ac(3, [1], [2, 3])`` is ``{{1},{2,3}}`` on three elements."""
    return Universe(n).antichain(sets)


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
