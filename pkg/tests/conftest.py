from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from chorefair import Instance

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def additive_instances(draw, max_n=3, max_m=6, min_n=1, min_m=0, max_cost=20):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(min_m, max_m))
    cost = st.integers(0, max_cost)
    rows = [[draw(cost) for _ in range(m)] for _ in range(n)]
    return Instance.additive(rows)


@st.composite
def allocations_for(draw, instance, complete=True):
    from chorefair import Allocation

    n, m = instance.n, instance.m
    owners = [draw(st.integers(0 if complete else -1, n - 1)) for _ in range(m)]
    bundles = [0] * n
    for e, a in enumerate(owners):
        if a >= 0:
            bundles[a] |= 1 << e
    return Allocation(tuple(bundles))


def frac(text):
    return Fraction(text)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
