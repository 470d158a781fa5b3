import random

import pytest

from graphkh.graph import LabeledGraph
from graphkh.harness import random_graph


@pytest.fixture
def edge_graph():
    """Two framing-0 vertices, signs +1 and -1, joined by an edge."""
    return LabeledGraph.from_edges([(0, 1), (0, -1)], [(0, 1)])


@pytest.fixture
def unknot_plus():
    return LabeledGraph.from_edges([(0, 1)])


@pytest.fixture
def unknot_minus():
    return LabeledGraph.from_edges([(0, -1)])


@pytest.fixture
def empty_graph():
    return LabeledGraph.empty()


def random_graphs(count, max_n, seed, min_n=0):
    rng = random.Random(seed)
    return [random_graph(rng.randint(min_n, max_n), rng) for _ in range(count)]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda l: int(l.split()[2])):
        terminalreporter.write_line(line)
