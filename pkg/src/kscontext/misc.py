"""Minimally indeterministic sets of contexts (MISCs) and irreducible ones."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import Budget, InvalidArgument
from .extremal import ExtremalModel, extremal_models, smallest_indeterministic_size
from .graphs import enumerate_minimal_edge_covers, make_complete_bipartite
from .scenarios import Scenario, deterministic_contexts
from .two_reg import TwoRegScenario, is_two_regular, two_reg


@dataclass(frozen=True)
class ContextSet:
    parent: Scenario
    context_indices: tuple

    def __post_init__(self):
        idx = tuple(sorted(self.context_indices))
        if len(set(idx)) != len(idx):
            raise InvalidArgument("context indices must be distinct")
        if any(not 0 <= i < self.parent.num_edges for i in idx):
            raise InvalidArgument("context index out of range")
        object.__setattr__(self, "context_indices", idx)

    @property
    def size(self) -> int:
        return len(self.context_indices)

    def __len__(self):
        return len(self.context_indices)

    def __iter__(self):
        return iter(self.context_indices)


@dataclass
class MiscReport:
    is_misc: bool
    is_irr: bool = False
    counterexample: ExtremalModel | None = None
    reducing_subset: ContextSet | None = None
    p_max: Fraction | None = None

    def to_dict(self) -> dict:
        from .rational import fmt

        return {
            "is_misc": self.is_misc,
            "is_irr": self.is_irr,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
            "reducing_subset": list(self.reducing_subset.context_indices) if self.reducing_subset else None,
            "p_max": fmt(self.p_max) if self.p_max is not None else None,
        }


def _scen(h) -> Scenario:
    return h.scenario if isinstance(h, TwoRegScenario) else h


def _mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class _DetIndex:
    """Deterministic-context bitmasks of the extremal models."""

    def __init__(self, h: Scenario, extremals):
        self.h = h
        self.extremals = list(extremals)
        self.masks = [_mask(deterministic_contexts(h, e.model)) for e in self.extremals]
        uniq = set(self.masks)
        # keep only inclusion-maximal masks for the fast membership test
        self.maximal = [m for m in uniq if not any(o != m and o & m == m for o in uniq)]

    def covered(self, mask: int) -> bool:
        return any(m & mask == mask for m in self.maximal)

    def witness(self, mask: int):
        return next((e for e, m in zip(self.extremals, self.masks) if m & mask == mask), None)


def _prepare(h, c, extremals):
    scen = _scen(h)
    if isinstance(c, ContextSet):
        if c.parent != scen:
            raise InvalidArgument("context set belongs to a different scenario")
        idx = c.context_indices
    else:
        idx = ContextSet(scen, tuple(c)).context_indices
    if not idx:
        raise InvalidArgument("empty context set")
    if extremals is None:
        extremals = extremal_models(scen)
    index = extremals if isinstance(extremals, _DetIndex) else _DetIndex(scen, extremals)
    return scen, idx, index


def _p_max(scen, idx, index: _DetIndex):
    """Largest top probability in the one indeterministic context among
    extremal models making all other contexts of the set deterministic."""
    best = None
    full = _mask(idx)
    for e, m in zip(index.extremals, index.masks):
        left = full & ~m
        if left and left & (left - 1) == 0:
            i = left.bit_length() - 1
            top = max(e.model[w] for w in scen.hyperedges[i])
            if best is None or top > best:
                best = top
    if best is None and is_two_regular(scen):
        best = Fraction(1, 2)
    return best


def is_misc(h, c, extremals=None) -> MiscReport:
    scen, idx, index = _prepare(h, c, extremals)
    mask = _mask(idx)
    if index.covered(mask):
        return MiscReport(False, counterexample=index.witness(mask))
    return MiscReport(True, p_max=_p_max(scen, idx, index))


def is_irr_misc(h, c, extremals=None) -> MiscReport:
    scen, idx, index = _prepare(h, c, extremals)
    report = is_misc(scen, idx, index)
    if not report.is_misc:
        return report
    # monotone property: checking the subsets one smaller is enough
    for sub in combinations(idx, len(idx) - 1):
        if sub and not index.covered(_mask(sub)):
            report.reducing_subset = ContextSet(scen, sub)
            return report
    report.is_irr = True
    return report


def enumerate_miscs(h, extremals=None) -> list[ContextSet]:
    scen = _scen(h)
    index = _DetIndex(scen, extremals if extremals is not None else extremal_models(scen))
    out = []
    for size in range(1, scen.num_edges + 1):
        for sub in combinations(range(scen.num_edges), size):
            if not index.covered(_mask(sub)):
                out.append(ContextSet(scen, sub))
    return out


def enumerate_irr_miscs(h, extremals=None, budget: int | None = None) -> list[ContextSet]:
    """All irrMISCs, ascending size then lexicographic."""
    scen = _scen(h)
    index = _DetIndex(scen, extremals if extremals is not None else extremal_models(scen))
    counter = Budget(budget, "irrMISC enumeration")
    found = []
    found_masks = []
    for size in range(1, scen.num_edges + 1):
        for sub in combinations(range(scen.num_edges), size):
            counter.tick()
            mask = _mask(sub)
            if any(f & mask == f for f in found_masks):
                continue  # strict superset of an irreducible one
            if not index.covered(mask):
                # every smaller MISC would contain an irreducible one already found
                found.append(ContextSet(scen, sub))
                found_masks.append(mask)
    return found


def irr_miscs_kmn(m: int, n: int) -> list[ContextSet]:
    """irrMISCs of 2Reg(K_{m,n}) from the edge-cover characterisation."""
    if m < 1 or n < 1 or m * n <= 1 or (m * n) % 2 == 0:
        raise InvalidArgument("need mn > 1 odd")
    t = two_reg(make_complete_bipartite(m, n))
    scen = t.scenario
    if m == 1 or n == 1:
        return [ContextSet(scen, sub) for sub in combinations(range(scen.num_edges), m * n - 2)]
    covers = enumerate_minimal_edge_covers(t.source_graph)
    sets = [ContextSet(scen, tuple(t.edge_origin[i] for i in cov.edge_indices)) for cov in covers]
    return sorted(sets, key=lambda s: (s.size, s.context_indices))


def sufficient_misc(h, extremals=None) -> int:
    """n - k + 1: every set of that many contexts is a MISC."""
    scen = _scen(h)
    extremals = extremals if extremals is not None else extremal_models(scen)
    k = smallest_indeterministic_size(scen, extremals)
    size = scen.num_edges - k + 1
    index = _DetIndex(scen, extremals)
    for sub in combinations(range(scen.num_edges), size):
        if index.covered(_mask(sub)):
            raise AssertionError(f"context set {sub} of size {size} is not a MISC")
    return size


def paired_reduction(h, model: ExtremalModel, extra: int, extremals=None) -> ContextSet:
    """Shrink the MISC (deterministic contexts of ``model``) + ``extra`` by
    keeping one context from each pair sharing a 1-valued node.

    Not every choice of representatives gives a MISC; choices are tried in
    lexicographic order and the first MISC is returned.
    """
    from itertools import product

    scen = _scen(h)
    if not is_two_regular(scen):
        raise InvalidArgument("pairing needs a 2-regular scenario")
    det = deterministic_contexts(scen, model.model)
    if extra in det:
        raise InvalidArgument("extra context must be indeterministic under the model")
    index = _DetIndex(scen, extremals if extremals is not None else extremal_models(scen))
    pairs = [tuple(scen.contexts_of(w)) for w in sorted(model.singleton_part)]
    for choice in product(*pairs):
        keep = tuple(sorted(set(choice) | {extra}))
        if not index.covered(_mask(keep)):
            return ContextSet(scen, keep)
    raise InvalidArgument("no choice of one context per pair yields a MISC")
