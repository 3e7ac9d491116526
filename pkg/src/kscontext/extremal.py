"""Extremal probabilistic models (vertices of the model polytope).

Two routes: a general search over supports whose induced subscenario has a
unique model, and a structural search for 2-regular scenarios built from
singleton contexts and disjoint odd hypercycles.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .errors import Budget, InvalidArgument
from .linalg import IncrementalBasis, ModPBasis, solve_integer
from .lp import INFEASIBLE, OPTIMAL, solve_lp
from .scenarios import (
    ProbModel,
    Scenario,
    deterministic_contexts,
    induced_subscenario,
    require_valid,
)
from .two_reg import TwoRegScenario, context_graph, is_two_regular, two_reg
from .graphs import make_complete_bipartite

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ExtremalModel:
    model: ProbModel
    support: frozenset
    singleton_part: frozenset
    hypercycle_part: tuple = ()

    @property
    def probabilities(self):
        return self.model.probabilities

    def sort_key(self):
        return tuple(-p for p in self.model.probabilities)

    def to_dict(self, h: Scenario | None = None) -> dict:
        from .rational import fmt

        return {
            "support": sorted(self.support),
            "probabilities": [fmt(p) for p in self.model.probabilities],
            "singleton_part": sorted(self.singleton_part),
            "hypercycles": [list(c) for c in self.hypercycle_part],
        }


def _scen(h) -> Scenario:
    return h.scenario if isinstance(h, TwoRegScenario) else h


def _half_cycles(h: Scenario, half_nodes) -> tuple:
    """Group 1/2-valued nodes of a 2-regular model into their hypercycles."""
    half = set(half_nodes)
    adj = {w: set() for w in half}
    for f in h.hyperedges:
        inside = [w for w in f if w in half]
        for a, b in combinations(inside, 2):
            adj[a].add(b)
            adj[b].add(a)
    cycles, seen = [], set()
    for w in sorted(half):
        if w in seen:
            continue
        comp, stack = [], [w]
        seen.add(w)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        cycles.append(tuple(sorted(comp)))
    return tuple(sorted(cycles))


def make_extremal(h: Scenario, model: ProbModel) -> ExtremalModel:
    ones = frozenset(w for w, p in enumerate(model.probabilities) if p == 1)
    cycles = ()
    if is_two_regular(h):
        cycles = _half_cycles(h, [w for w, p in enumerate(model.probabilities) if p == HALF])
    return ExtremalModel(model, model.support, ones, cycles)


def _sorted_models(models):
    return sorted(models, key=ExtremalModel.sort_key)


def model_uniqueness(h: Scenario):
    """("unique", model), ("multiple", None) or ("no probabilistic model", None).

    Decided by per-coordinate min and max over the feasible polytope.
    """
    require_valid(h)
    a = h.incidence()
    b = [1] * h.num_edges
    n = h.num_nodes
    first = solve_lp([0] * n, a, b)
    if first.status == INFEASIBLE:
        return "no probabilistic model", None
    point = first.x
    for w in range(n):
        for sign in (1, -1):
            c = [0] * n
            c[w] = sign
            res = solve_lp(c, a, b)
            assert res.status == OPTIMAL
            if res.x[w] != point[w]:
                return "multiple", None
    return "unique", ProbModel(tuple(point))


def unique_model(h: Scenario) -> ProbModel | None:
    return model_uniqueness(h)[1]


def _general_branch(h: Scenario, prefix_choice, budget):
    """Supports whose smallest node is ``prefix_choice`` (None: search all)."""
    cols = [[int(w in f) for f in h.hyperedges] for w in range(h.num_nodes)]
    new_basis = ModPBasis if ModPBasis.exact_for(h.num_edges) else IncrementalBasis
    last_node = [max(f) for f in h.hyperedges]
    ending_at = {}
    for i, w in enumerate(last_node):
        ending_at.setdefault(w, []).append(i)
    hit = [0] * h.num_edges
    ones = [1] * h.num_edges
    counter = budget
    found = []
    chosen = []

    def leaf():
        a = [[cols[w][i] for w in chosen] for i in range(h.num_edges)]
        x, unique = solve_integer(a, ones)
        if x is None or not unique or any(v <= 0 for v in x):
            return
        values = [Fraction(0)] * h.num_nodes
        for w, v in zip(chosen, x):
            values[w] = v
        found.append(tuple(values))

    def rec(w, basis):
        counter.tick()
        if w == h.num_nodes:
            if all(hit) and not any(basis.reduce(ones)):
                leaf()
            return
        forced = [i for i in ending_at.get(w, ()) if not hit[i]]
        nb = basis.copy()
        # once 1 lies in the span, any further column would get weight 0
        saturated = bool(chosen) and not any(basis.reduce(ones))
        if not saturated and nb.try_add(cols[w]):
            chosen.append(w)
            for i in range(h.num_edges):
                if cols[w][i]:
                    hit[i] += 1
            rec(w + 1, nb)
            for i in range(h.num_edges):
                if cols[w][i]:
                    hit[i] -= 1
            chosen.pop()
        if not forced and not (prefix_choice is not None and w == prefix_choice):
            rec(w + 1, basis)

    if prefix_choice is None:
        rec(0, new_basis())
        return found
    # skip nodes below the prefix, then force it in
    for w in range(prefix_choice):
        if any(not hit[i] for i in ending_at.get(w, ())):
            return found
    basis = new_basis()
    rec(prefix_choice, basis)
    return found


def _branch_worker(args):
    h, start, limit = args
    return _general_branch(h, start, Budget(limit, "extremal enumeration"))


def enumerate_extremal_models(h, budget: int | None = None, parallel: bool = False,
                              confirm: bool = True) -> list[ExtremalModel]:
    """Vertices of the model polytope via supports with a unique model.

    Candidate supports are linearly independent transversal column sets with
    a strictly positive solution; each is then confirmed by the LP test on
    its induced subscenario.
    """
    h = _scen(h)
    require_valid(h)
    if parallel and h.num_nodes > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor() as pool:
            parts = list(pool.map(_branch_worker, [(h, s, budget) for s in range(h.num_nodes)]))
        raw = [v for part in parts for v in part]
    else:
        raw = _general_branch(h, None, Budget(budget, "extremal enumeration"))
    models = []
    for values in sorted(set(raw)):
        model = ProbModel(values)
        if confirm:
            sub = induced_subscenario(h, model.support)
            status, p = model_uniqueness(sub)
            assert status == "unique" and all(v > 0 for v in p.probabilities)
            assert p.probabilities == tuple(values[w] for w in sorted(model.support))
        models.append(make_extremal(h, model))
    return _sorted_models(models)


def enumerate_extremal_models_2reg(h, budget: int | None = None) -> list[ExtremalModel]:
    """Extremal models of a 2-regular scenario: every context is covered
    either by a node valued 1 whose two contexts it fills, or by an odd
    cycle of 1/2-valued nodes."""
    scen = _scen(h)
    require_valid(scen)
    if not is_two_regular(scen):
        raise InvalidArgument("scenario is not 2-regular")
    counter = Budget(budget, "structural extremal enumeration")
    ends = context_graph(scen)
    links = [[] for _ in range(scen.num_edges)]  # context -> (node, other context)
    for w in sorted(ends):
        a, b = ends[w]
        links[a].append((w, b))
        links[b].append((w, a))
    covered = [False] * scen.num_edges
    values = [Fraction(0)] * scen.num_nodes
    found = set()

    def odd_cycles(c):
        """Node tuples of odd context cycles through c over uncovered contexts."""
        out = []

        def walk(ctx, path_ctx, nodes):
            for w, nxt in links[ctx]:
                if nxt == c and len(path_ctx) >= 3 and len(path_ctx) % 2 == 1:
                    out.append(tuple(nodes + [w]))
                elif not covered[nxt] and nxt not in path_ctx and nxt != c:
                    path_ctx.append(nxt)
                    walk(nxt, path_ctx, nodes + [w])
                    path_ctx.pop()

        walk(c, [c], [])
        seen, unique = set(), []
        for cyc in out:
            key = frozenset(cyc)
            if key not in seen:
                seen.add(key)
                unique.append(cyc)
        return unique

    def rec():
        counter.tick()
        c = next((i for i in range(scen.num_edges) if not covered[i]), None)
        if c is None:
            found.add(tuple(values))
            return
        for w, other in links[c]:
            if not covered[other]:
                covered[c] = covered[other] = True
                values[w] = Fraction(1)
                rec()
                values[w] = Fraction(0)
                covered[c] = covered[other] = False
        for cyc in odd_cycles(c):
            ctxs = {x for w in cyc for x in ends[w]}
            for x in ctxs:
                covered[x] = True
            for w in cyc:
                values[w] = HALF
            rec()
            for w in cyc:
                values[w] = Fraction(0)
            for x in ctxs:
                covered[x] = False

    rec()
    return _sorted_models(make_extremal(scen, ProbModel(v)) for v in found)


def extremal_models(h, method: str = "auto", budget: int | None = None,
                    parallel: bool = False) -> list[ExtremalModel]:
    scen = _scen(h)
    if method not in ("auto", "general", "structural"):
        raise InvalidArgument(f"unknown method {method!r}")
    if method == "structural" or (method == "auto" and is_two_regular(scen)):
        return enumerate_extremal_models_2reg(scen, budget)
    return enumerate_extremal_models(scen, budget, parallel)


def khypercycle_models_kmn(m: int, n: int, k: int) -> list[ExtremalModel]:
    """Extremal models of 2Reg(K_{m,n}) whose 1/2-valued part is one
    k-hypercycle made of k edges at a common vertex, rest singletons."""
    if m < 1 or n < 1 or m * n <= 1 or (m * n) % 2 == 0:
        raise InvalidArgument("need mn > 1 odd")
    if k < 3 or k % 2 == 0:
        raise InvalidArgument("k must be odd and at least 3")
    if k > max(m, n):
        raise InvalidArgument(f"no vertex of K_{{{m},{n}}} has degree {k}")
    t = two_reg(make_complete_bipartite(m, n))
    scen = t.scenario
    node_of = {pair: w for w, pair in enumerate(t.node_origin)}
    g = t.source_graph
    ends = context_graph(scen)
    found = {}
    for v in range(g.num_vertices):
        inc = g.incident(v)
        for star in combinations(inc, k):
            rest = [i for i in range(scen.num_edges) if i not in star]
            for order in permutations(star[1:]):
                if order[0] > order[-1]:
                    continue  # each cyclic order once up to reversal
                ring = (star[0],) + order
                cyc = [node_of[tuple(sorted((ring[j], ring[(j + 1) % k])))] for j in range(k)]
                for ones in _perfect_pairings(rest, ends):
                    values = [Fraction(0)] * scen.num_nodes
                    for w in cyc:
                        values[w] = HALF
                    for w in ones:
                        values[w] = Fraction(1)
                    model = make_extremal(scen, ProbModel(tuple(values)))
                    found[model.model.probabilities] = model
    return _sorted_models(found.values())


def _perfect_pairings(contexts, ends):
    """Node sets valued 1 that fill every context in ``contexts`` exactly
    once using nodes lying in two of those contexts."""
    ctx = set(contexts)
    nodes_at = {c: [w for w, (a, b) in sorted(ends.items()) if c in (a, b) and a in ctx and b in ctx]
                for c in ctx}
    out = []
    covered = set()
    chosen = []

    def rec():
        c = next((x for x in sorted(ctx) if x not in covered), None)
        if c is None:
            out.append(tuple(chosen))
            return
        for w in nodes_at[c]:
            a, b = ends[w]
            other = b if a == c else a
            if other not in covered:
                covered.update((a, b))
                chosen.append(w)
                rec()
                chosen.pop()
                covered.difference_update((a, b))

    rec()
    return out


def indeterministic_count(h: Scenario, e: ExtremalModel) -> int:
    return h.num_edges - len(deterministic_contexts(h, e.model))


def smallest_indeterministic_size(h, extremals=None) -> int:
    scen = _scen(h)
    if extremals is None:
        extremals = extremal_models(scen)
    counts = [indeterministic_count(scen, e) for e in extremals]
    if not counts or min(counts) == 0:
        raise InvalidArgument("scenario is KS-colourable; k is undefined")
    return min(counts)
