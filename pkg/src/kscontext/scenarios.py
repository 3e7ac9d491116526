"""Contextuality scenarios: hypergraphs of outcomes (nodes) and contexts
(hyperedges), with exact-rational probabilistic models on them."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import Budget, EmptyHyperedgeError, InvalidArgument
from .rational import fmt, to_fraction


@dataclass(frozen=True)
class Scenario:
    num_nodes: int
    hyperedges: tuple
    node_labels: tuple = ()

    def __post_init__(self):
        edges = tuple(tuple(sorted(f)) for f in self.hyperedges)
        object.__setattr__(self, "hyperedges", edges)
        labels = tuple(self.node_labels) or tuple(str(i) for i in range(self.num_nodes))
        object.__setattr__(self, "node_labels", labels)

    @property
    def num_edges(self) -> int:
        return len(self.hyperedges)

    def contexts_of(self, w: int) -> list[int]:
        return [i for i, f in enumerate(self.hyperedges) if w in f]

    def degrees(self) -> list[int]:
        deg = [0] * self.num_nodes
        for f in self.hyperedges:
            for w in f:
                if 0 <= w < self.num_nodes:
                    deg[w] += 1
        return deg

    def incidence(self) -> list[list[int]]:
        """Rows are contexts, columns are nodes."""
        rows = []
        for f in self.hyperedges:
            row = [0] * self.num_nodes
            for w in f:
                row[w] = 1
            rows.append(row)
        return rows

    def to_dict(self) -> dict:
        return {
            "num_nodes": self.num_nodes,
            "node_labels": list(self.node_labels),
            "hyperedges": [list(f) for f in self.hyperedges],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        try:
            return cls(
                int(data["num_nodes"]),
                tuple(tuple(int(w) for w in f) for f in data["hyperedges"]),
                tuple(data.get("node_labels") or ()),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgument(f"malformed scenario JSON: {exc}") from exc

    def to_dot(self, style: str = "clique", name: str = "H") -> str:
        """Graphviz rendering; ``clique`` joins co-contextual nodes with edges
        labelled by context index, ``star`` adds one box per context."""
        lines = [f"graph {name} {{"]
        for w in range(self.num_nodes):
            lines.append(f'  n{w} [label="{self.node_labels[w]}"];')
        if style == "clique":
            for i, f in enumerate(self.hyperedges):
                if len(f) == 1:
                    lines.append(f'  n{f[0]} -- n{f[0]} [label="{i}"];')
                for a in range(len(f)):
                    for b in range(a + 1, len(f)):
                        lines.append(f'  n{f[a]} -- n{f[b]} [label="{i}"];')
        elif style == "star":
            for i, f in enumerate(self.hyperedges):
                lines.append(f'  f{i} [shape=box,label="f{i}"];')
                for w in f:
                    lines.append(f"  f{i} -- n{w};")
        else:
            raise InvalidArgument(f"unknown DOT style {style!r}")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ProbModel:
    probabilities: tuple

    def __post_init__(self):
        object.__setattr__(self, "probabilities", tuple(Fraction(p) for p in self.probabilities))

    def __getitem__(self, w):
        return self.probabilities[w]

    def __len__(self):
        return len(self.probabilities)

    @property
    def support(self) -> frozenset:
        return frozenset(w for w, p in enumerate(self.probabilities) if p != 0)

    def to_dict(self) -> dict:
        return {"probabilities": [fmt(p) for p in self.probabilities]}

    @classmethod
    def from_dict(cls, data: dict) -> "ProbModel":
        try:
            return cls(tuple(to_fraction(p) for p in data["probabilities"]))
        except (KeyError, TypeError) as exc:
            raise InvalidArgument(f"malformed model JSON: {exc}") from exc


@dataclass
class ValidationReport:
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.ok


def validate(h: Scenario) -> ValidationReport:
    report = ValidationReport()
    if len(h.node_labels) != h.num_nodes:
        report.problems.append(f"{len(h.node_labels)} labels for {h.num_nodes} nodes")
    for i, f in enumerate(h.hyperedges):
        if not f:
            report.problems.append(f"empty hyperedge {i}")
        if len(set(f)) != len(f):
            report.problems.append(f"hyperedge {i} repeats a node")
        bad = [w for w in f if not 0 <= w < h.num_nodes]
        if bad:
            report.problems.append(f"hyperedge {i} has invalid nodes {bad}")
    covered = {w for f in h.hyperedges for w in f}
    missing = [w for w in range(h.num_nodes) if w not in covered]
    if missing:
        report.problems.append(f"nodes in no hyperedge: {missing}")
    return report


def require_valid(h: Scenario):
    report = validate(h)
    if not report.ok:
        if any(p.startswith("empty hyperedge") for p in report.problems):
            raise EmptyHyperedgeError("; ".join(report.problems))
        raise InvalidArgument("invalid scenario: " + "; ".join(report.problems))


@dataclass(frozen=True)
class ScenarioProfile:
    d: object  # int, or the string "non-uniform"
    num_edges: int
    num_nodes: int
    degree_histogram: dict
    max_degree: int
    multi_context_nodes: int
    incidences: int  # sum of context sizes, d|F| when uniform

    @property
    def half_incidences(self) -> Fraction:
        return Fraction(self.incidences, 2)

    @property
    def bounds_hold(self) -> bool:
        """m <= |W| <= d|F|."""
        return self.multi_context_nodes <= self.num_nodes <= self.incidences

    @property
    def m_at_most_half(self) -> bool:
        return self.multi_context_nodes <= self.half_incidences

    @property
    def nodes_at_most_half(self) -> bool:
        return self.num_nodes <= self.half_incidences

    @property
    def degree_one_criterion(self) -> bool:
        """n_1 <= sum_{k>=3} (k-2) n_k, equivalent to |W| <= d|F|/2."""
        h = self.degree_histogram
        return h.get(1, 0) <= sum((k - 2) * c for k, c in h.items() if k >= 3)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "num_edges": self.num_edges,
            "num_nodes": self.num_nodes,
            "degree_histogram": {str(k): v for k, v in sorted(self.degree_histogram.items())},
            "max_degree": self.max_degree,
            "multi_context_nodes": self.multi_context_nodes,
            "incidences": self.incidences,
            "m_at_most_half": self.m_at_most_half,
            "nodes_at_most_half": self.nodes_at_most_half,
            "degree_one_criterion": self.degree_one_criterion,
        }


def profile_from_histogram(d: int, histogram: dict) -> ScenarioProfile:
    """Profile arithmetic for a d-uniform scenario given only n_k counts."""
    hist = {int(k): int(v) for k, v in histogram.items() if v}
    incidences = sum(k * v for k, v in hist.items())
    if d < 1 or incidences % d:
        raise InvalidArgument(f"sum k*n_k = {incidences} is not a multiple of d = {d}")
    num_nodes = sum(hist.values())
    return ScenarioProfile(
        d=d,
        num_edges=incidences // d,
        num_nodes=num_nodes,
        degree_histogram=hist,
        max_degree=max(hist, default=0),
        multi_context_nodes=num_nodes - hist.get(1, 0),
        incidences=incidences,
    )


def profile(h: Scenario) -> ScenarioProfile:
    require_valid(h)
    hist = dict(sorted(Counter(h.degrees()).items()))
    sizes = {len(f) for f in h.hyperedges}
    d = sizes.pop() if len(sizes) == 1 else "non-uniform"
    return ScenarioProfile(
        d=d,
        num_edges=h.num_edges,
        num_nodes=h.num_nodes,
        degree_histogram=hist,
        max_degree=max(hist, default=0),
        multi_context_nodes=h.num_nodes - hist.get(1, 0),
        incidences=sum(len(f) for f in h.hyperedges),
    )


def _check_size(h: Scenario, p: ProbModel):
    if len(p) != h.num_nodes:
        raise InvalidArgument(f"model has {len(p)} values for {h.num_nodes} nodes")


def is_probabilistic_model(h: Scenario, p: ProbModel) -> bool:
    _check_size(h, p)
    if any(not 0 <= x <= 1 for x in p.probabilities):
        return False
    return all(sum(p[w] for w in f) == 1 for f in h.hyperedges)


def is_transversal(h: Scenario, s) -> bool:
    s = set(s)
    return all(s.intersection(f) for f in h.hyperedges)


def induced_subscenario(h: Scenario, s) -> Scenario:
    """Restriction to node set ``s``; node ``i`` of the result is the i-th
    smallest element of ``s``. Coinciding restricted contexts stay distinct."""
    nodes = sorted(set(s))
    if any(not 0 <= w < h.num_nodes for w in nodes):
        raise InvalidArgument("node set contains invalid nodes")
    index = {w: i for i, w in enumerate(nodes)}
    edges = []
    for i, f in enumerate(h.hyperedges):
        kept = tuple(index[w] for w in f if w in index)
        if not kept:
            raise EmptyHyperedgeError(f"node set misses context {i}; not a transversal")
        edges.append(kept)
    return Scenario(len(nodes), tuple(edges), tuple(h.node_labels[w] for w in nodes))


def extend_model(h: Scenario, s, ps: ProbModel) -> ProbModel:
    nodes = sorted(set(s))
    sub = induced_subscenario(h, nodes)
    if len(ps) != sub.num_nodes or not is_probabilistic_model(sub, ps):
        raise InvalidArgument("model is not a probabilistic model on the induced subscenario")
    values = [Fraction(0)] * h.num_nodes
    for i, w in enumerate(nodes):
        values[w] = ps[i]
    return ProbModel(tuple(values))


def restrict_model(p: ProbModel, s) -> ProbModel:
    return ProbModel(tuple(p[w] for w in sorted(set(s))))


def co_membership(h: Scenario) -> list[set]:
    """Adjacency of the graph joining nodes that share some context."""
    adj = [set() for _ in range(h.num_nodes)]
    for f in h.hyperedges:
        for a in f:
            adj[a].update(f)
    for w in range(h.num_nodes):
        adj[w].discard(w)
    return adj


def find_hypercycles(h: Scenario, n: int, budget: int | None = None) -> list[tuple]:
    """All n-hypercycles, each as a sorted node tuple.

    A hypercycle is an induced n-cycle of the co-membership graph that no
    single context contains three nodes of.
    """
    if n < 3:
        raise InvalidArgument("hypercycles have at least 3 nodes")
    require_valid(h)
    adj = co_membership(h)
    counter = Budget(budget, "hypercycle search")
    found = []

    def no_triple_in_context(nodes):
        ns = set(nodes)
        return all(len(ns.intersection(f)) <= 2 for f in h.hyperedges)

    def extend(path, on_path):
        counter.tick()
        start, last = path[0], path[-1]
        if len(path) == n:
            if start in adj[last] and path[1] < path[-1] and no_triple_in_context(path):
                found.append(tuple(sorted(path)))
            return
        for nxt in sorted(adj[last]):
            if nxt <= start or nxt in on_path:
                continue
            # induced: nxt may touch only `last` among interior path nodes,
            # and `start` only when it will close the cycle
            if any(nxt in adj[v] for v in path[1:-1]):
                continue
            if nxt in adj[start] and len(path) + 1 < n and len(path) > 1:
                continue
            on_path.add(nxt)
            path.append(nxt)
            extend(path, on_path)
            path.pop()
            on_path.discard(nxt)

    for s in range(h.num_nodes):
        extend([s], {s})
    return sorted(set(found))


def is_deterministic_context(h: Scenario, p: ProbModel, f: int) -> bool:
    return all(p[w] in (0, 1) for w in h.hyperedges[f])


def deterministic_contexts(h: Scenario, p: ProbModel) -> frozenset:
    return frozenset(i for i in range(h.num_edges) if is_deterministic_context(h, p, i))
