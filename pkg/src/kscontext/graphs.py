"""Undirected simple graphs, generators, line graphs, edge covers and matchings.

Vertices are dense 0-based integers. Edge sets are sorted tuples of edge
indices, and every enumerator returns them in lexicographic order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidArgument, NoCoverExists


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple

    def __post_init__(self):
        if self.num_vertices < 0:
            raise InvalidArgument("num_vertices must be non-negative")
        norm = []
        seen = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InvalidArgument(f"self-loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise InvalidArgument(f"edge {e} has an endpoint outside 0..{self.num_vertices - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidArgument(f"repeated edge {key}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def incident(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in e]

    def isolated_vertices(self) -> list[int]:
        touched = {v for e in self.edges for v in e}
        return [v for v in range(self.num_vertices) if v not in touched]

    def edge_set(self, indices) -> "EdgeSet":
        return EdgeSet(self, tuple(indices))

    def to_dict(self) -> dict:
        return {"num_vertices": self.num_vertices, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        try:
            return cls(int(data["num_vertices"]), tuple(tuple(e) for e in data["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidArgument):
                raise
            raise InvalidArgument(f"malformed graph JSON: {exc}") from exc

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.num_vertices):
            lines.append(f"  {v};")
        for i, (u, v) in enumerate(self.edges):
            lines.append(f'  {u} -- {v} [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class EdgeSet:
    parent: Graph
    edge_indices: tuple

    def __post_init__(self):
        idx = tuple(sorted(self.edge_indices))
        if len(set(idx)) != len(idx):
            raise InvalidArgument("edge indices must be distinct")
        if any(not 0 <= i < self.parent.num_edges for i in idx):
            raise InvalidArgument("edge index out of range")
        object.__setattr__(self, "edge_indices", idx)

    @property
    def edges(self) -> list[tuple]:
        return [self.parent.edges[i] for i in self.edge_indices]

    def __len__(self):
        return len(self.edge_indices)


def make_complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n}; the m-part is vertices 0..m-1, the n-part m..m+n-1."""
    if m < 1 or n < 1:
        raise InvalidArgument(f"part sizes must be >= 1, got ({m}, {n})")
    return Graph(m + n, tuple((i, m + j) for i in range(m) for j in range(n)))


def make_claw() -> Graph:
    return make_complete_bipartite(1, 3)


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidArgument(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def make_complete(n: int) -> Graph:
    if n < 2:
        raise InvalidArgument(f"complete graph needs at least 2 vertices, got {n}")
    return Graph(n, tuple(combinations(range(n), 2)))


def line_graph(g: Graph) -> Graph:
    edges = tuple(
        (i, j)
        for i, j in combinations(range(g.num_edges), 2)
        if set(g.edges[i]) & set(g.edges[j])
    )
    return Graph(g.num_edges, edges)


def _check_subset(g: Graph, s: EdgeSet):
    if s.parent != g:
        raise InvalidArgument("edge set belongs to a different graph")


def is_edge_cover(g: Graph, s: EdgeSet) -> bool:
    _check_subset(g, s)
    covered = {v for e in s.edges for v in e}
    return len(covered) == g.num_vertices


def enumerate_minimal_edge_covers(g: Graph) -> list[EdgeSet]:
    if g.isolated_vertices():
        raise NoCoverExists(f"isolated vertices {g.isolated_vertices()} cannot be covered")
    incident = [g.incident(v) for v in range(g.num_vertices)]
    last_chance = [max(inc) for inc in incident]
    cover_deg = [0] * g.num_vertices
    chosen: list[int] = []
    found: list[tuple] = []

    def redundant(i):
        u, v = g.edges[i]
        return cover_deg[u] >= 2 and cover_deg[v] >= 2

    def rec(i):
        if i == g.num_edges:
            if all(cover_deg):
                found.append(tuple(chosen))
            return
        u, v = g.edges[i]
        # include edge i; an edge whose endpoints are both multiply covered
        # stays removable under any extension, so prune there
        cover_deg[u] += 1
        cover_deg[v] += 1
        chosen.append(i)
        if not any(redundant(j) for j in chosen):
            rec(i + 1)
        chosen.pop()
        cover_deg[u] -= 1
        cover_deg[v] -= 1
        # exclude edge i unless it was the last chance to cover an endpoint
        if (last_chance[u] == i and cover_deg[u] == 0) or (last_chance[v] == i and cover_deg[v] == 0):
            return
        rec(i + 1)

    rec(0)
    return [EdgeSet(g, idx) for idx in sorted(found)]


def enumerate_minimum_edge_covers(g: Graph) -> list[EdgeSet]:
    minimal = enumerate_minimal_edge_covers(g)
    size = min(len(s) for s in minimal)
    return [s for s in minimal if len(s) == size]


def enumerate_perfect_matchings(g: Graph) -> list[EdgeSet]:
    if g.num_vertices % 2:
        return []
    incident = [g.incident(v) for v in range(g.num_vertices)]
    used = [False] * g.num_vertices
    chosen: list[int] = []
    found = []

    def rec():
        v = next((x for x in range(g.num_vertices) if not used[x]), None)
        if v is None:
            found.append(tuple(sorted(chosen)))
            return
        used[v] = True
        for i in incident[v]:
            a, b = g.edges[i]
            w = b if a == v else a
            if not used[w]:
                used[w] = True
                chosen.append(i)
                rec()
                chosen.pop()
                used[w] = False
        used[v] = False

    rec()
    return [EdgeSet(g, idx) for idx in sorted(found)]


def cover_components(g: Graph, s: EdgeSet) -> int:
    """Connected components of the spanning subgraph (V, s)."""
    if not is_edge_cover(g, s):
        raise InvalidArgument("edge set is not an edge cover")
    parent = list(range(g.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in s.edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(g.num_vertices)})


def minimum_edge_cover_count_kmn(m: int, n: int) -> int:
    """Number of minimum edge covers of K_{m,n}, m, n >= 2.

    A minimum cover has max(m, n) edges and gives every vertex of the larger
    side degree one, so covers are surjections from the larger side onto the
    smaller one.
    """
    from math import comb

    if m < 2 or n < 2:
        raise InvalidArgument("count is defined here for m, n >= 2")
    hi, lo = max(m, n), min(m, n)
    return sum((-1) ** i * comb(lo, i) * (lo - i) ** hi for i in range(lo + 1))


def all_connected_graphs(max_edges: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs with
    1..max_edges edges and no isolated vertices, grown edge by edge."""
    import networkx as nx

    def to_nx(g):
        h = nx.Graph()
        h.add_nodes_from(range(g.num_vertices))
        h.add_edges_from(g.edges)
        return h

    level = [Graph(2, ((0, 1),))]
    out = list(level)
    for _ in range(max_edges - 1):
        buckets: dict[str, list] = {}
        nxt = []
        for g in level:
            cands = [(u, v) for u, v in combinations(range(g.num_vertices), 2) if (u, v) not in g.edges]
            cands += [(u, g.num_vertices) for u in range(g.num_vertices)]
            for u, v in cands:
                nv = max(g.num_vertices, v + 1)
                h = Graph(nv, g.edges + ((u, v),))
                hn = to_nx(h)
                key = nx.weisfeiler_lehman_graph_hash(hn)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(hn, other) for other in bucket):
                    continue
                bucket.append(hn)
                nxt.append(h)
        out.extend(nxt)
        level = nxt
    return out
