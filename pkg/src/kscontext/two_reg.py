"""The 2Reg graph-to-scenario map, hypercycle recognition, the matching
scenario of the line graph, and scenario isomorphism."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import EmptyHyperedgeError, InvalidArgument
from .graphs import Graph, line_graph
from .scenarios import Scenario, require_valid, validate


@dataclass(frozen=True)
class TwoRegScenario:
    scenario: Scenario
    source_graph: Graph
    node_origin: tuple  # node index -> (edge i, edge j), i < j
    edge_origin: tuple  # hyperedge index -> source edge index

    def to_dict(self) -> dict:
        out = self.scenario.to_dict()
        out["node_origin"] = [list(p) for p in self.node_origin]
        out["edge_origin"] = list(self.edge_origin)
        return out


def _intersecting_pairs(g: Graph):
    return [
        (i, j)
        for i, j in combinations(range(g.num_edges), 2)
        if set(g.edges[i]) & set(g.edges[j])
    ]


def two_reg(g: Graph) -> TwoRegScenario:
    """Nodes are intersecting edge pairs of ``g``; context i collects the
    pairs containing edge i. Degree-0 vertices of ``g`` are ignored."""
    if g.num_edges == 0:
        raise InvalidArgument("graph has no edges")
    pairs = _intersecting_pairs(g)
    hyperedges = tuple(
        tuple(k for k, p in enumerate(pairs) if i in p) for i in range(g.num_edges)
    )
    lonely = [i for i, f in enumerate(hyperedges) if not f]
    if lonely:
        raise EmptyHyperedgeError(
            f"edges {[g.edges[i] for i in lonely]} meet no other edge; their contexts would be empty"
        )
    labels = tuple(f"({i},{j})" for i, j in pairs)
    h = Scenario(len(pairs), hyperedges, labels)
    return TwoRegScenario(h, g, tuple(pairs), tuple(range(g.num_edges)))


def matching_scenario(g: Graph) -> Scenario:
    """Mat(L(g)): outcomes are the edges of the line graph, one context per
    line-graph vertex holding its incident edges."""
    if g.num_edges == 0:
        raise InvalidArgument("graph has no edges")
    lg = line_graph(g)
    hyperedges = tuple(tuple(lg.incident(v)) for v in range(lg.num_vertices))
    if any(not f for f in hyperedges):
        raise EmptyHyperedgeError("line graph has an isolated vertex; a context would be empty")
    labels = tuple(f"{{{u},{v}}}" for u, v in lg.edges)
    return Scenario(lg.num_edges, hyperedges, labels)


def is_two_regular(h: Scenario) -> bool:
    return all(d == 2 for d in h.degrees())


def context_graph(h: Scenario) -> dict:
    """For a 2-regular scenario: node -> the pair of contexts containing it."""
    ends = {}
    for w in range(h.num_nodes):
        ctx = h.contexts_of(w)
        if len(ctx) != 2:
            raise InvalidArgument(f"node {w} lies in {len(ctx)} contexts, scenario is not 2-regular")
        ends[w] = tuple(ctx)
    return ends


def is_hypercycle_scenario(h: Scenario):
    """n when ``h`` is an n-hypercycle (n >= 3) on all of its nodes, else None."""
    if not validate(h).ok:
        return None
    n = h.num_nodes
    if n < 3 or h.num_edges != n or any(len(f) != 2 for f in h.hyperedges):
        return None
    if len(set(h.hyperedges)) != n or not is_two_regular(h):
        return None
    # 2-regular, 2-uniform: a disjoint union of cycles; require one cycle
    adj = {w: set() for w in range(n)}
    for a, b in h.hyperedges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for x in adj[stack.pop()]:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return n if len(seen) == n else None


def scenarios_isomorphic(a: Scenario, b: Scenario):
    """A node bijection carrying the contexts of ``a`` onto those of ``b``
    (as a multiset), or None."""
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher

    if (a.num_nodes, a.num_edges) != (b.num_nodes, b.num_edges):
        return None
    if sorted(map(len, a.hyperedges)) != sorted(map(len, b.hyperedges)):
        return None
    if sorted(a.degrees()) != sorted(b.degrees()):
        return None

    def incidence(h):
        g = nx.Graph()
        g.add_nodes_from((("w", w) for w in range(h.num_nodes)), kind="w")
        g.add_nodes_from((("f", i) for i in range(h.num_edges)), kind="f")
        g.add_edges_from((("w", w), ("f", i)) for i, f in enumerate(h.hyperedges) for w in f)
        return g

    matcher = GraphMatcher(incidence(a), incidence(b), node_match=lambda x, y: x["kind"] == y["kind"])
    for iso in matcher.isomorphisms_iter():
        mapping = {k[1]: v[1] for k, v in iso.items() if k[0] == "w"}
        image = sorted(tuple(sorted(mapping[w] for w in f)) for f in a.hyperedges)
        if image == sorted(b.hyperedges):
            return mapping
    return None


def require_two_regular(h) -> Scenario:
    scen = h.scenario if isinstance(h, TwoRegScenario) else h
    require_valid(scen)
    if not is_two_regular(scen):
        raise InvalidArgument("scenario is not 2-regular")
    return scen
