import io

import pytest

from commdiff import CommunitySet, load_edge_list

SEVEN_EDGES = [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)]
TWO_TRIANGLES = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]


def edge_text(edges):
    return "".join(f"{a} {b}\n" for a, b in edges)


def graph_of(edges):
    return load_edge_list(io.StringIO(edge_text(edges)))


def cset(g, groups, algorithm="x"):
    return CommunitySet.from_tokens(g, groups, algorithm=algorithm)


@pytest.fixture
def fixture_graph():
    return graph_of(SEVEN_EDGES)


@pytest.fixture
def two_triangles():
    return graph_of(TWO_TRIANGLES)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
