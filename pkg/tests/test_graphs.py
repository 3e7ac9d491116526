from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from kscontext.errors import InvalidArgument, NoCoverExists
from kscontext.graphs import (
    EdgeSet,
    Graph,
    all_connected_graphs,
    cover_components,
    enumerate_minimal_edge_covers,
    enumerate_minimum_edge_covers,
    enumerate_perfect_matchings,
    is_edge_cover,
    line_graph,
    make_claw,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    minimum_edge_cover_count_kmn,
)


def brute_covers(g):
    covers = [s for r in range(g.num_edges + 1) for s in combinations(range(g.num_edges), r)
              if is_edge_cover(g, g.edge_set(s))]
    minimal = [s for s in covers
               if not any(is_edge_cover(g, g.edge_set(s[:i] + s[i + 1:])) for i in range(len(s)))]
    return sorted(minimal)


def test_generators():
    k33 = make_complete_bipartite(3, 3)
    assert (k33.num_vertices, k33.num_edges) == (6, 9)
    assert make_complete_bipartite(1, 1).num_edges == 1
    claw = make_claw()
    assert (claw.num_vertices, claw.num_edges) == (4, 3)
    assert make_cycle(5).num_edges == 5 and make_cycle(4).num_vertices == 4
    assert make_complete(4).num_edges == 6 and make_complete(5).num_edges == 10
    assert set(make_complete(3).edges) == set(make_cycle(3).edges)


@pytest.mark.parametrize("bad", [lambda: make_complete_bipartite(0, 3), lambda: make_cycle(2),
                                 lambda: make_complete(1), lambda: Graph(2, ((0, 0),)),
                                 lambda: Graph(2, ((0, 1), (1, 0))), lambda: Graph(2, ((0, 2),))])
def test_generator_errors(bad):
    with pytest.raises(InvalidArgument):
        bad()


def test_line_graph():
    for n in (3, 4, 5, 6):
        assert line_graph(make_complete_bipartite(1, n)) == make_complete(n)
        lg = line_graph(make_cycle(n))
        assert lg.num_edges == n and all(lg.degree(v) == 2 for v in range(n))
    single = line_graph(Graph(2, ((0, 1),)))
    assert (single.num_vertices, single.num_edges) == (1, 0)


def test_edge_cover_examples():
    g = make_complete_bipartite(3, 3)
    diag = g.edge_set([g.edges.index((i, 3 + i)) for i in range(3)])
    assert is_edge_cover(g, diag)
    assert not is_edge_cover(g, g.edge_set([0]))
    assert is_edge_cover(g, g.edge_set(range(9)))
    assert cover_components(g, diag) == 3
    four = g.edge_set([g.edges.index(e) for e in ((0, 3), (0, 4), (1, 5), (2, 5))])
    assert is_edge_cover(g, four) and cover_components(g, four) == 2
    assert cover_components(make_claw(), make_claw().edge_set(range(3))) == 1
    with pytest.raises(InvalidArgument):
        cover_components(g, g.edge_set([0]))


def test_minimal_covers_k33():
    covers = enumerate_minimal_edge_covers(make_complete_bipartite(3, 3))
    assert len(covers) == 15
    assert sorted(len(c) for c in covers) == [3] * 6 + [4] * 9
    assert [c.edge_indices for c in covers] == sorted(c.edge_indices for c in covers)


@pytest.mark.parametrize("m,n", [(1, 3), (1, 5), (2, 2), (2, 3), (3, 3), (2, 4)])
def test_minimal_covers_match_brute_force(m, n):
    g = make_complete_bipartite(m, n)
    assert [c.edge_indices for c in enumerate_minimal_edge_covers(g)] == brute_covers(g)


def test_star_is_its_own_cover():
    for n in (2, 3, 5):
        covers = enumerate_minimal_edge_covers(make_complete_bipartite(1, n))
        assert [c.edge_indices for c in covers] == [tuple(range(n))]
    assert len(enumerate_minimum_edge_covers(make_claw())) == 1


def test_minimum_cover_counts():
    assert len(enumerate_minimum_edge_covers(make_complete_bipartite(3, 3))) == 6
    # exhaustive search gives 6 for K_{2,3}, see the minimum_edge_cover_count_kmn docstring
    assert len(enumerate_minimum_edge_covers(make_complete_bipartite(2, 3))) == 6
    for m in range(2, 5):
        for n in range(2, 5):
            g = make_complete_bipartite(m, n)
            brute = [c for c in brute_covers(g) if len(c) == max(m, n)]
            assert len(enumerate_minimum_edge_covers(g)) == len(brute) == minimum_edge_cover_count_kmn(m, n)


def test_no_cover_with_isolated_vertex():
    with pytest.raises(NoCoverExists):
        enumerate_minimal_edge_covers(Graph(3, ((0, 1),)))


def test_perfect_matchings():
    assert len(enumerate_perfect_matchings(make_complete_bipartite(3, 3))) == 6
    assert len(enumerate_perfect_matchings(make_complete_bipartite(2, 2))) == 2
    assert enumerate_perfect_matchings(make_cycle(5)) == []
    g = make_complete_bipartite(3, 3)
    minimum = {c.edge_indices for c in enumerate_minimum_edge_covers(g)}
    assert {pm.edge_indices for pm in enumerate_perfect_matchings(g)} == minimum


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)])
def test_minimal_cover_invariants(m, n):
    g = make_complete_bipartite(m, n)
    for c in enumerate_minimal_edge_covers(g):
        deg = [0] * g.num_vertices
        for u, v in c.edges:
            deg[u] += 1
            deg[v] += 1
        assert not any(deg[u] >= 2 and deg[v] >= 2 for u, v in c.edges)
        assert max(m, n) <= len(c) <= m + n - 2
        assert len(c) == m + n - cover_components(g, c)


def test_connected_graph_corpus_counts():
    counts = [0] * 8
    for g in all_connected_graphs(7):
        counts[g.num_edges] += 1
        assert not g.isolated_vertices()
    # connected graphs by edge count (OEIS A002905)
    assert counts[1:] == [1, 1, 3, 5, 12, 30, 79]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda nv: st.tuples(st.just(nv), st.sets(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1))
                                            .filter(lambda e: e[0] < e[1]), min_size=1, max_size=8))))
def test_minimal_covers_random(data):
    nv, edges = data
    g = Graph(nv, tuple(sorted(edges)))
    if g.isolated_vertices():
        with pytest.raises(NoCoverExists):
            enumerate_minimal_edge_covers(g)
        return
    assert [c.edge_indices for c in enumerate_minimal_edge_covers(g)] == brute_covers(g)


def test_edge_set_validation():
    g = make_cycle(3)
    with pytest.raises(InvalidArgument):
        EdgeSet(g, (0, 0))
    with pytest.raises(InvalidArgument):
        EdgeSet(g, (5,))
    assert Graph.from_dict(g.to_dict()) == g
    assert "0 -- 1" in g.to_dot()
