from itertools import combinations

import pytest

from conftest import hypercycle, kmn
from kscontext.errors import InvalidArgument
from kscontext.graphs import enumerate_perfect_matchings, is_edge_cover
from kscontext.misc import (
    ContextSet,
    enumerate_irr_miscs,
    enumerate_miscs,
    irr_miscs_kmn,
    is_irr_misc,
    is_misc,
    paired_reduction,
    sufficient_misc,
)
from kscontext.scenarios import deterministic_contexts


def ctx(t, pairs):
    """Context indices of K_{3,3} edges given as (left, right) with right 0..2."""
    return tuple(t.source_graph.edges.index((a, 3 + b)) for a, b in pairs)


def test_k33_examples():
    t, ex = kmn(3, 3)
    diag = ctx(t, [(0, 0), (1, 1), (2, 2)])
    assert is_misc(t, diag, ex).is_misc
    for pair in combinations(range(9), 2):
        rep = is_misc(t, pair, ex)
        assert not rep.is_misc and rep.counterexample is not None
        assert set(pair) <= deterministic_contexts(t.scenario, rep.counterexample.model)
    four = ctx(t, [(2, 0), (1, 0), (0, 1), (0, 2)])
    rep = is_irr_misc(t, four, ex)
    assert rep.is_misc and rep.is_irr and rep.reducing_subset is None
    rep = is_irr_misc(t, range(9), ex)
    assert rep.is_misc and not rep.is_irr and is_misc(t, rep.reducing_subset, ex).is_misc


def test_report_invariants():
    t, ex = kmn(3, 3)
    for r in range(1, 10):
        for s in combinations(range(9), r):
            rep = is_irr_misc(t, s, ex)
            assert (rep.counterexample is not None) != rep.is_misc
            assert not rep.is_irr or rep.is_misc
            assert (rep.reducing_subset is not None) == (rep.is_misc and not rep.is_irr)


def test_k17_any_five():
    t, ex = kmn(1, 7)
    for s in combinations(range(7), 5):
        assert is_irr_misc(t, s, ex).is_irr


def test_enumeration_counts():
    t, ex = kmn(3, 3)
    irr = enumerate_irr_miscs(t, ex)
    assert [c.size for c in irr] == [3] * 6 + [4] * 9
    pms = {pm.edge_indices for pm in enumerate_perfect_matchings(t.source_graph)}
    assert {c.context_indices for c in irr if c.size == 3} == pms
    assert len(enumerate_irr_miscs(*kmn(1, 7))) == 21
    for n in (3, 5, 9):
        irr = enumerate_irr_miscs(*kmn(1, n))
        assert len(irr) == n * (n - 1) // 2 and {c.size for c in irr} == {n - 2}


@pytest.mark.parametrize("m,n", [(1, 3), (1, 5), (1, 7), (3, 3)])
def test_closed_form_agrees(m, n):
    t, ex = kmn(m, n)
    assert irr_miscs_kmn(m, n) == enumerate_irr_miscs(t, ex)


def test_closed_form_errors():
    for bad in [(2, 3), (1, 1), (0, 3)]:
        with pytest.raises(InvalidArgument):
            irr_miscs_kmn(*bad)


def test_singletons_of_claw():
    assert [c.context_indices for c in irr_miscs_kmn(1, 3)] == [(0,), (1,), (2,)]


def test_edge_cover_equivalence_k33():
    t, ex = kmn(3, 3)
    g = t.source_graph
    for r in range(1, 10):
        for s in combinations(range(9), r):
            assert is_misc(t, s, ex).is_misc == is_edge_cover(g, g.edge_set(s))


@pytest.mark.parametrize("m,n", [(3, 3), (1, 5), (1, 7)])
def test_monotone(m, n):
    t, ex = kmn(m, n)
    miscs = {c.context_indices for c in enumerate_miscs(t, ex)}
    for s in miscs:
        for extra in range(t.scenario.num_edges):
            if extra not in s:
                assert tuple(sorted(s + (extra,))) in miscs


def test_sufficient_size():
    assert sufficient_misc(*kmn(3, 3)) == 7
    assert sufficient_misc(*kmn(1, 7)) == 5
    assert sufficient_misc(hypercycle(5)) == 1


def test_paired_reduction_k33():
    t, ex = kmn(3, 3)
    h = t.scenario
    k = 3
    for e in ex:
        det = deterministic_contexts(h, e.model)
        if h.num_edges - len(det) != k:
            continue
        for extra in sorted(set(range(9)) - det):
            big = tuple(sorted(det | {extra}))
            assert len(big) == 9 - k + 1 and is_misc(t, big, ex).is_misc
            small = paired_reduction(t, e, extra, ex)
            assert small.size == (9 - k) // 2 + 1
            assert is_misc(t, small, ex).is_misc
            assert extra in small.context_indices and set(small.context_indices) <= set(big)


def test_some_pairings_fail():
    # keeping the lower context of every pair is not always a MISC
    t, ex = kmn(3, 3)
    h = t.scenario
    misses = 0
    for e in ex:
        det = deterministic_contexts(h, e.model)
        if len(det) != 6:
            continue
        for extra in sorted(set(range(9)) - det):
            naive = {min(h.contexts_of(w)) for w in e.singleton_part} | {extra}
            misses += not is_misc(t, naive, ex).is_misc
    assert misses > 0


def test_p_max():
    t, ex = kmn(3, 3)
    assert is_misc(t, range(7), ex).p_max == 0.5


def test_context_set_validation():
    t, _ = kmn(3, 3)
    with pytest.raises(InvalidArgument):
        ContextSet(t.scenario, (0, 0))
    with pytest.raises(InvalidArgument):
        ContextSet(t.scenario, (9,))
    with pytest.raises(InvalidArgument):
        is_misc(t, (), kmn(3, 3)[1])
