from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_models01, hypercycle
from kscontext.colourability import (
    find_ks_colouring,
    parity_verdict_2regular,
    parity_witness_general,
    synthetic_case2_scenario,
    verdict,
)
from kscontext.errors import BudgetExceeded, InvalidArgument
from kscontext.graphs import Graph, all_connected_graphs, make_complete_bipartite, make_cycle
from kscontext.scenarios import Scenario, is_probabilistic_model, profile, validate
from kscontext.two_reg import two_reg


def exactly_one(h, p):
    return all(sum(p[w] for w in f) == 1 for f in h.hyperedges) and set(p.probabilities) <= {0, 1}


def test_find_colouring_examples():
    h = two_reg(make_cycle(4)).scenario
    p = find_ks_colouring(h)
    assert p is not None and exactly_one(h, p)
    assert find_ks_colouring(two_reg(make_complete_bipartite(3, 3))) is None
    assert find_ks_colouring(Scenario(2, ((0, 1),))).probabilities == (1, 0)
    with pytest.raises(BudgetExceeded):
        find_ks_colouring(two_reg(make_complete_bipartite(3, 3)), budget=3)


def test_parity_2regular_examples():
    assert parity_verdict_2regular(two_reg(make_complete_bipartite(1, 7))).colourable is False
    v = parity_verdict_2regular(two_reg(make_complete_bipartite(2, 3)))
    assert v.colourable and exactly_one(two_reg(make_complete_bipartite(2, 3)).scenario, v.witness)
    assert parity_verdict_2regular(two_reg(make_cycle(3))).colourable is False
    with pytest.raises(InvalidArgument):
        parity_verdict_2regular(Scenario(3, ((0, 1, 2), (0,))))


def test_parity_with_odd_block_in_even_total():
    # two disjoint triangles: even number of contexts, still uncolourable
    g = Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    v = parity_verdict_2regular(two_reg(g))
    assert v.colourable is False and v.certificate.verify(two_reg(g).scenario)
    assert find_ks_colouring(two_reg(g)) is None
    # 2-regular, connected, even, but no perfect matching of the context graph
    star = Scenario(3, ((0, 1, 2), (0,), (1,), (2,)))
    assert parity_verdict_2regular(star).colourable is False
    assert find_ks_colouring(star) is None


def test_general_certificates():
    h = two_reg(make_complete_bipartite(3, 3)).scenario
    c = parity_witness_general(h)
    assert c.case == "case-1" and c.verify(h)
    s = synthetic_case2_scenario()
    assert validate(s).ok
    prof = profile(s)
    assert s.num_edges % 2 == 0 and prof.degree_histogram.get(9) == 3
    c = parity_witness_general(s)
    assert c.case == "case-2" and c.verify(s)
    assert find_ks_colouring(s) is None
    assert parity_witness_general(two_reg(make_cycle(4))) is None
    # a triangle beside a colourable part: only the general GF(2) search finds it
    mixed = Scenario(5, ((0, 1), (1, 2), (0, 2), (3, 4), (3,), (4,)))
    c = parity_witness_general(mixed)
    assert c.case == "gf2" and c.verify(mixed) and c.combination == (0, 1, 2)


def test_verdict_dispatch():
    v = verdict(two_reg(make_complete_bipartite(1, 5)))
    assert (v.colourable, v.method) == (False, "parity-2regular")
    assert verdict(two_reg(make_complete_bipartite(3, 3))).colourable is False
    v = verdict(hypercycle(4))
    assert v.colourable and exactly_one(hypercycle(4), v.witness)
    v = verdict(synthetic_case2_scenario())
    assert (v.colourable, v.method) == (False, "parity-general")
    colourable = Scenario(4, ((0, 1), (1, 2, 3), (0, 3)))
    assert verdict(colourable, "parity").colourable is None
    assert verdict(colourable).colourable is True
    assert verdict(two_reg(make_complete_bipartite(3, 3)), "exhaustive").method == "exhaustive"


def test_parity_law_agrees_with_search_on_corpus():
    for g in all_connected_graphs(8):
        if g.num_edges < 2:
            continue
        t = two_reg(g)
        v = parity_verdict_2regular(t)
        found = find_ks_colouring(t)
        assert v.colourable == (found is not None) == (g.num_edges % 2 == 0)
        if v.colourable:
            assert exactly_one(t.scenario, v.witness)


def test_kmn_specialisation():
    for m, n in [(a, b) for a in range(1, 4) for b in range(1, 4)] + [(1, 5), (1, 7)]:
        if m * n < 2:
            continue
        uncol = find_ks_colouring(two_reg(make_complete_bipartite(m, n))) is None
        assert uncol == (m * n % 2 == 1)


scenarios = st.integers(2, 7).flatmap(lambda n: st.lists(
    st.sets(st.integers(0, n - 1), min_size=1, max_size=min(4, n)), min_size=1, max_size=7
).map(lambda fs: Scenario(n, tuple(tuple(f) for f in fs))).filter(lambda h: validate(h).ok))


@settings(max_examples=200, deadline=None)
@given(scenarios)
def test_search_and_parity_against_brute_force(h):
    brute = list(brute_models01(h))
    found = find_ks_colouring(h)
    assert (found is None) == (not brute)
    if found is not None:
        assert exactly_one(h, found)
    cert = parity_witness_general(h)
    if cert is not None:
        assert cert.verify(h) and not brute
    v = verdict(h)
    assert v.colourable == bool(brute)
