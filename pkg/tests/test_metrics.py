import itertools
import random

import networkx as nx
import pytest

from commdiff import CommunitySet, Graph, UnsupportedMetricError, conductance, isolability, metric_report, modularity
from commdiff.metrics import community_conductance, community_isolability

from conftest import cset


def test_modularity_whole_graph_is_zero(fixture_graph):
    assert modularity(fixture_graph, cset(fixture_graph, [[1, 2, 3, 4, 5, 6]])) == pytest.approx(0.0, abs=1e-15)


def test_modularity_two_triangles(two_triangles):
    # 2 * (3/6 - (6/12)^2)
    assert modularity(two_triangles, cset(two_triangles, [[1, 2, 3], [4, 5, 6]])) == pytest.approx(0.5, abs=1e-12)


def test_modularity_fixture_split(fixture_graph):
    expected = 2 * (3 / 7 - (7 / 14) ** 2)
    assert modularity(fixture_graph, cset(fixture_graph, [[1, 2, 3], [4, 5, 6]])) == pytest.approx(expected, abs=1e-12)
    assert round(expected, 3) == 0.357


def test_modularity_rejects_cover(fixture_graph):
    with pytest.raises(UnsupportedMetricError):
        modularity(fixture_graph, cset(fixture_graph, [[1, 2, 3, 4], [3, 4, 5, 6]]))


def test_conductance_examples(fixture_graph, two_triangles):
    g = fixture_graph
    assert conductance(g, cset(g, [[1, 2, 3, 4, 5, 6]])) == 0.0
    assert community_conductance(g, g.indices_of([1, 2, 3])) == pytest.approx(1 / 7, abs=1e-12)
    assert conductance(g, cset(g, [[1, 2, 3], [4, 5, 6]])) == pytest.approx(1 / 7, abs=1e-12)
    assert conductance(two_triangles, cset(two_triangles, [[1, 2, 3], [4, 5, 6]])) == 0.0


def test_conductance_max_aggregate(fixture_graph):
    g = fixture_graph
    cs = cset(g, [[1, 2, 3], [4], [5, 6]])
    per = [community_conductance(g, c) for c in cs]
    assert conductance(g, cs, aggregate="max") == max(per)
    with pytest.raises(ValueError):
        conductance(g, cs, aggregate="median")


def test_isolability_examples(fixture_graph):
    g = fixture_graph
    assert isolability(g, cset(g, [[1, 2, 3, 4, 5, 6]])) == 1.0
    assert community_isolability(g, g.indices_of([1, 2, 3])) == pytest.approx(0.75, abs=1e-12)
    # node 1 has degree 2 and no internal edge as a singleton
    assert community_isolability(g, g.indices_of([1])) == 0.0


def _random_graph(rng, n, m):
    g = nx.gnm_random_graph(n, m, seed=rng.randrange(10**6))
    return g, Graph.from_edges(g.edges(), nodes=range(n))


@pytest.mark.parametrize("seed", range(5))
def test_against_networkx(seed):
    rng = random.Random(seed)
    G, g = _random_graph(rng, 20, 45)
    labels = [rng.randrange(4) for _ in range(20)]
    cs = CommunitySet.from_labels(labels)
    blocks = [{int(g.tokens[v]) for v in c} for c in cs]
    assert modularity(g, cs) == pytest.approx(nx.community.modularity(G, blocks), abs=1e-12)
    for c, block in zip(cs, blocks):
        if nx.cut_size(G, block):
            assert community_conductance(g, c) == pytest.approx(nx.conductance(G, block), abs=1e-12)


def test_ranges_on_random_partitions():
    rng = random.Random(3)
    for _ in range(50):
        _, g = _random_graph(rng, 12, rng.randrange(1, 30))
        cs = CommunitySet.from_labels([rng.randrange(3) for _ in range(12)])
        rep = metric_report(g, cs)
        assert -0.5 <= rep.modularity <= 1
        assert 0 <= rep.conductance <= 1
        assert 0 <= rep.isolability <= 1


def test_clique_partition_beats_random_partitions():
    edges, blocks = [], []
    for c in range(3):
        nodes = list(range(4 * c, 4 * c + 4))
        blocks.append(nodes)
        edges += list(itertools.combinations(nodes, 2))
    g = Graph.from_edges(edges)
    best = modularity(g, CommunitySet.from_tokens(g, blocks))
    rng = random.Random(0)
    for _ in range(200):
        cs = CommunitySet.from_labels([rng.randrange(rng.randrange(1, 6)) for _ in range(12)])
        assert modularity(g, cs) <= best + 1e-12


def test_isolability_and_conductance_agree_per_community():
    """For a community holding at most half the volume, both metrics are
    monotone in cut/internal edges, in opposite directions."""
    rng = random.Random(1)
    for _ in range(10):
        _, g = _random_graph(rng, 6, rng.randrange(4, 12))
        scored = []
        for r in range(1, 6):
            for members in itertools.combinations(range(6), r):
                c = frozenset(members)
                vol = sum(len(g.adjacency[v]) for v in c)
                if 0 < vol <= g.m:
                    scored.append((community_isolability(g, c), community_conductance(g, c)))
        for (i1, c1), (i2, c2) in itertools.combinations(scored, 2):
            if abs(i1 - i2) > 1e-12:
                assert (i1 > i2) == (c1 < c2)


def test_relabeling_invariance():
    rng = random.Random(2)
    G, g = _random_graph(rng, 10, 20)
    labels = [rng.randrange(3) for _ in range(10)]
    perm = list(range(10))
    rng.shuffle(perm)
    h = Graph.from_edges([(perm[a], perm[b]) for a, b in G.edges()], nodes=range(10))
    cs_g = CommunitySet.from_labels(labels)
    cs_h = CommunitySet.from_tokens(h, [[perm[int(g.tokens[v])] for v in c] for c in cs_g])
    for metric in (modularity, conductance, isolability):
        assert metric(g, cs_g) == pytest.approx(metric(h, cs_h), abs=1e-12)


def test_metric_report_on_cover(fixture_graph):
    rep = metric_report(fixture_graph, cset(fixture_graph, [[1, 2, 3, 4], [3, 4, 5, 6]], "cov"))
    assert rep.modularity is None
    assert rep.as_row()["modularity"] == ""
