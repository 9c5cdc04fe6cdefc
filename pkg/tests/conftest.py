import pytest
from hypothesis import HealthCheck, settings

from toricgraph.graphs import complete_bipartite_2t, cycle_graph, gt_graph
from toricgraph.groebner import initial_ideal, toric_ideal

settings.register_profile("default", max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def g2():
    g = gt_graph(2)
    ring = g.ring("paper-gt")
    gb = toric_ideal(g, ring)
    return g, ring, gb, initial_ideal(gb)


@pytest.fixture(scope="session")
def k23():
    g = complete_bipartite_2t(3)
    ring = g.ring()
    gb = toric_ideal(g, ring)
    return g, ring, gb, initial_ideal(gb)


@pytest.fixture(scope="session")
def c4():
    g = cycle_graph(4)
    ring = g.ring()
    gb = toric_ideal(g, ring)
    return g, ring, gb, initial_ideal(gb)


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.stash.setdefault(_ACCEPTANCE, {})


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
