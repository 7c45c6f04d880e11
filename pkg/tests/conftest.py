import os

from hypothesis import HealthCheck, settings, strategies as st

from localsim.graph import Graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=1, max_n=12, ids=False):
    """Random simple graphs; with ``ids=True`` vertex IDs are arbitrary distinct integers."""
    n = draw(st.integers(min_n, max_n))
    if ids:
        verts = draw(st.lists(st.integers(0, 10_000), min_size=n, max_size=n, unique=True))
    else:
        verts = list(range(n))
    pairs = [(verts[i], verts[j]) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(verts, [e for e, keep in zip(pairs, mask) if keep])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
