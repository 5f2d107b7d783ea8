from hypothesis import given, settings
from hypothesis import strategies as st

from commdiff import CommunitySet, analytical_nodes, pair_communities

import oracle
from conftest import cset


def summary(assignment):
    return [(p.primary_index, p.alt_index, p.overlap) for p in assignment.pairs]


def test_pairs_by_max_overlap(fixture_graph):
    g = fixture_graph
    a = pair_communities(cset(g, [[1, 2, 3], [4, 5, 6]]), cset(g, [[1, 2], [3, 4, 5, 6]]))
    assert summary(a) == [(0, 0, 2), (1, 1, 3)]
    assert a.skipped == ()


def test_tie_goes_to_lowest_alternative(fixture_graph):
    g = fixture_graph
    a = pair_communities(cset(g, [[1, 2, 3, 4]]), cset(g, [[1, 2], [3, 4]]))
    assert summary(a) == [(0, 0, 2)]


def test_zero_overlap_is_skipped(fixture_graph):
    g = fixture_graph
    a = pair_communities(cset(g, [[1, 2]]), cset(g, [[5, 6]]))
    assert a.pairs == () and a.skipped == (0,)


def test_many_to_one(fixture_graph):
    g = fixture_graph
    a = pair_communities(cset(g, [[1, 2], [3, 4]]), cset(g, [[1, 2, 3, 4, 5, 6]]))
    assert summary(a) == [(0, 0, 2), (1, 0, 2)]


def test_analytical_nodes(fixture_graph):
    g = fixture_graph

    def nodes(p, a):
        pair = pair_communities(cset(g, [p]), cset(g, [a])).pairs[0]
        return {g.tokens[v] for v in analytical_nodes(pair)}

    assert nodes([1, 2, 3], [1, 2]) == {"3"}
    assert nodes([4, 5, 6], [3, 4, 5, 6]) == set()
    assert nodes([1, 2, 3, 4], [3, 4, 5, 6]) == {"1", "2"}


def test_to_json_uses_tokens(fixture_graph):
    g = fixture_graph
    doc = pair_communities(cset(g, [[1, 2, 3]]), cset(g, [[1, 2]])).to_json(g)
    assert doc == {"pairs": [{"i": 0, "j": 0, "overlap": 2, "analytical_nodes": ["3"]}], "skipped": []}


community_lists = st.lists(st.frozensets(st.integers(0, 11), min_size=1, max_size=8), min_size=1, max_size=8)


@settings(max_examples=300, deadline=None)
@given(community_lists, community_lists)
def test_matches_brute_force_scan(primary, alternative):
    cp = CommunitySet("p", "", tuple(primary), 12)
    ca = CommunitySet("a", "", tuple(alternative), 12)
    a = pair_communities(cp, ca)
    assert [(p.primary_index, p.alt_index) for p in a.pairs] == oracle.comparable_pairs(primary, alternative)
    paired = {p.primary_index for p in a.pairs}
    assert sorted(paired | set(a.skipped)) == list(range(len(primary)))
    for p in a.pairs:
        c_p, c_a = primary[p.primary_index], alternative[p.alt_index]
        assert p.overlap >= 1
        assert p.overlap + len(p.analytical_nodes) == len(c_p)
        assert p.analytical_nodes <= c_p and not (p.analytical_nodes & c_a)
    assert pair_communities(cp, ca) == a
