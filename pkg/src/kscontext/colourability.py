"""KS-colourability: exhaustive exact-hitting search and parity certificates."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import Budget, InvalidArgument
from .scenarios import ProbModel, Scenario, is_probabilistic_model, require_valid
from .two_reg import TwoRegScenario, context_graph, is_two_regular


@dataclass
class ParityCertificate:
    """Contexts whose normalisation rows sum to 0 = 1 over GF(2)."""
    case: str  # "case-1", "case-2", "gf2" or "parity-2regular"
    combination: tuple
    explanation: str = ""

    def verify(self, h: Scenario) -> bool:
        if len(self.combination) % 2 == 0 or len(set(self.combination)) != len(self.combination):
            return False
        counts = [0] * h.num_nodes
        for i in self.combination:
            for w in h.hyperedges[i]:
                counts[w] ^= 1
        return not any(counts)

    def to_dict(self) -> dict:
        return {"case": self.case, "combination": list(self.combination), "explanation": self.explanation}


@dataclass
class ColourabilityVerdict:
    colourable: bool | None  # None only for an inconclusive parity-only run
    method: str
    justification: str
    witness: ProbModel | None = None
    certificate: ParityCertificate | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "colourable": self.colourable,
            "method": self.method,
            "justification": self.justification,
            "witness": self.witness.to_dict()["probabilities"] if self.witness else None,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }
        out.update(self.extra)
        return out


def _scenario(h) -> Scenario:
    return h.scenario if isinstance(h, TwoRegScenario) else h


def find_ks_colouring(h, budget: int | None = None) -> ProbModel | None:
    """A {0,1} model hitting every context exactly once, or None.

    Branches on the open context with fewest candidate nodes, nodes in
    increasing order, so the result is deterministic.
    """
    h = _scenario(h)
    require_valid(h)
    counter = Budget(budget, "KS-colouring search")
    contexts_of = [h.contexts_of(w) for w in range(h.num_nodes)]
    state = [None] * h.num_nodes  # None open, 0 or 1
    done = [False] * h.num_edges

    def assign_one(w, trail):
        state[w] = 1
        trail.append(w)
        for i in contexts_of[w]:
            done[i] = True
            for x in h.hyperedges[i]:
                if state[x] is None:
                    state[x] = 0
                    trail.append(x)

    def rec():
        counter.tick()
        best = None
        for i, f in enumerate(h.hyperedges):
            if done[i]:
                continue
            cands = [w for w in f if state[w] is None]
            if best is None or len(cands) < len(best[1]):
                best = (i, cands)
                if not cands:
                    return False
        if best is None:
            return True
        for w in best[1]:
            trail = []
            saved = list(done)
            assign_one(w, trail)
            if rec():
                return True
            for x in trail:
                state[x] = None
            done[:] = saved
        return False

    if not rec():
        return None
    return ProbModel(tuple(Fraction(1 if s == 1 else 0) for s in state))


def _components(num, adj_pairs):
    parent = list(range(num))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in adj_pairs:
        parent[find(a)] = find(b)
    groups = {}
    for v in range(num):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def parity_verdict_2regular(h) -> ColourabilityVerdict:
    """Exact verdict for 2-regular scenarios.

    Colourings are perfect matchings of the context graph (contexts as
    vertices, nodes as edges). A component with an odd number of contexts
    blocks one by parity; otherwise a maximum matching decides.
    """
    import networkx as nx

    scen = _scenario(h)
    require_valid(scen)
    if not is_two_regular(scen):
        raise InvalidArgument("scenario is not 2-regular")
    ends = context_graph(scen)
    comps = _components(scen.num_edges, ends.values())
    odd = [c for c in comps if len(c) % 2]
    if odd:
        comp = tuple(odd[0])
        cert = ParityCertificate(
            "parity-2regular",
            comp,
            f"the {len(comp)} contexts {list(comp)} form a connected block; each of their "
            "nodes lies in exactly two of them, so summing their normalisations gives "
            f"2 * (sum of node values) = {len(comp)}, impossible in integers",
        )
        return ColourabilityVerdict(
            False, "parity-2regular",
            f"odd number of contexts ({len(comp)}) in a connected block of the context graph",
            certificate=cert,
        )
    g = nx.Graph()
    g.add_nodes_from(range(scen.num_edges))
    pair_node = {}
    for w in sorted(ends):
        a, b = ends[w]
        if (a, b) not in pair_node:
            pair_node[(a, b)] = w
            g.add_edge(a, b)
    matching = nx.max_weight_matching(g, maxcardinality=True)
    if 2 * len(matching) < scen.num_edges:
        return ColourabilityVerdict(
            False, "parity-2regular",
            f"every block is even but the context graph has no perfect matching "
            f"(maximum matching {len(matching)} < {scen.num_edges // 2})",
        )
    values = [Fraction(0)] * scen.num_nodes
    for a, b in matching:
        values[pair_node[(min(a, b), max(a, b))]] = Fraction(1)
    witness = ProbModel(tuple(values))
    assert is_probabilistic_model(scen, witness)
    return ColourabilityVerdict(
        True, "parity-2regular",
        "every block of the context graph is even and a perfect matching pairs all contexts",
        witness=witness,
    )


def parity_witness_general(h) -> ParityCertificate | None:
    """A set of an odd number of contexts covering every node an even number
    of times, or None when the GF(2) system A x = 1 is consistent."""
    h = _scenario(h)
    require_valid(h)
    F = h.num_edges
    degrees = h.degrees()
    if F % 2 and all(d % 2 == 0 for d in degrees):
        return ParityCertificate(
            "case-1", tuple(range(F)),
            f"every node has even degree and there are {F} contexts",
        )
    odd_nodes = tuple(w for w in range(h.num_nodes) if degrees[w] % 2)
    if F % 2 == 0:
        for j, f in enumerate(h.hyperedges):
            if f == odd_nodes:
                combo = tuple(i for i in range(F) if i != j)
                return ParityCertificate(
                    "case-2", combo,
                    f"the odd-degree nodes are exactly context {j}; the other {F - 1} contexts "
                    "cover every node an even number of times",
                )
    # eliminate over GF(2): row = (node bitmask, rhs bit, context bitmask)
    pivots = {}  # leading node bit -> reduced row
    for i, f in enumerate(h.hyperedges):
        mask, rhs, combo = sum(1 << w for w in f), 1, 1 << i
        while mask:
            lead = mask.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = (mask, rhs, combo)
                break
            pm, pr, pc = pivots[lead]
            mask, rhs, combo = mask ^ pm, rhs ^ pr, combo ^ pc
        if not mask and rhs:
            idx = tuple(j for j in range(F) if combo >> j & 1)
            return ParityCertificate(
                "gf2", idx,
                f"contexts {list(idx)} cover every node an even number of times, "
                "and there are an odd number of them",
            )
    return None


def verdict(h, method: str = "auto", budget: int | None = None) -> ColourabilityVerdict:
    scen = _scenario(h)
    require_valid(scen)
    if method not in ("auto", "parity", "exhaustive"):
        raise InvalidArgument(f"unknown method {method!r}")
    if method in ("auto", "parity"):
        if is_two_regular(scen):
            return parity_verdict_2regular(scen)
        cert = parity_witness_general(scen)
        if cert is not None:
            return ColourabilityVerdict(
                False, "parity-general", cert.explanation, certificate=cert
            )
        if method == "parity":
            return ColourabilityVerdict(
                None, "parity-general", "inconclusive: the GF(2) system is consistent"
            )
    witness = find_ks_colouring(scen, budget)
    if witness is None:
        return ColourabilityVerdict(False, "exhaustive", "exhaustive search found no colouring")
    return ColourabilityVerdict(True, "exhaustive", "explicit colouring found", witness=witness)


def synthetic_case2_scenario() -> Scenario:
    """Uncolourable scenario where only the second parity case applies:
    F0 = {a, b, c}, twelve triples pairing two of a, b, c with a private
    filler, and one context of all fillers."""
    a, b, c = 0, 1, 2
    fillers = list(range(3, 15))
    edges = [(a, b, c)]
    k = 0
    for _ in range(4):
        for x, y in ((a, b), (b, c), (a, c)):
            edges.append((x, y, fillers[k]))
            k += 1
    edges.append(tuple(fillers))
    return Scenario(15, tuple(edges))
