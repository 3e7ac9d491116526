"""Noise-robust noncontextuality witnesses: q-weighted max-predictability
beta, the correlation quantity Corr_q on operational data, and the
saturating noncontextual model recipe."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidArgument, UndefinedBeta
from .extremal import ExtremalModel, extremal_models, smallest_indeterministic_size
from .lp import INFEASIBLE, solve_lp
from .rational import fmt, to_fraction, to_json_number
from .scenarios import ProbModel, Scenario, deterministic_contexts
from .two_reg import TwoRegScenario

SOURCE_ASSUMPTION = (
    "sources [T|S_1], ..., [T|S_n] are operationally equivalent, as are "
    "measurement events sharing a node of the scenario"
)


def _scen(h) -> Scenario:
    return h.scenario if isinstance(h, TwoRegScenario) else h


def _probs(model):
    return model.model if isinstance(model, ExtremalModel) else model


@dataclass(frozen=True)
class QDist:
    weights: tuple  # sorted (context index, weight) pairs with weight > 0

    def __post_init__(self):
        items = self.weights.items() if isinstance(self.weights, dict) else self.weights
        clean = {}
        for i, v in items:
            v = to_fraction(v)
            if v < 0:
                raise InvalidArgument(f"negative weight {fmt(v)} on context {i}")
            if v:
                clean[int(i)] = clean.get(int(i), Fraction(0)) + v
        if sum(clean.values(), Fraction(0)) != 1:
            raise InvalidArgument("weights must sum to exactly 1")
        object.__setattr__(self, "weights", tuple(sorted(clean.items())))

    @classmethod
    def uniform(cls, contexts) -> "QDist":
        idx = sorted(set(int(i) for i in contexts))
        if not idx:
            raise InvalidArgument("uniform q needs at least one context")
        return cls(tuple((i, Fraction(1, len(idx))) for i in idx))

    @property
    def support(self) -> tuple:
        return tuple(i for i, _ in self.weights)

    def __getitem__(self, i) -> Fraction:
        return dict(self.weights).get(i, Fraction(0))

    def is_uniform(self) -> bool:
        return len({v for _, v in self.weights}) == 1

    def to_dict(self) -> dict:
        return {"weights": {str(i): fmt(v) for i, v in self.weights}}

    @classmethod
    def from_dict(cls, data: dict) -> "QDist":
        try:
            return cls(tuple((int(k), v) for k, v in data["weights"].items()))
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            if isinstance(exc, InvalidArgument):
                raise
            raise InvalidArgument(f"malformed q JSON: {exc}") from exc


def zeta(h, model, context: int) -> Fraction:
    """Largest outcome probability the model gives within the context."""
    scen = _scen(h)
    if not 0 <= context < scen.num_edges:
        raise InvalidArgument(f"no context {context}")
    p = _probs(model)
    return max(p[w] for w in scen.hyperedges[context])


def weighted_zeta(h, model, q: QDist) -> Fraction:
    return sum((v * zeta(h, model, i) for i, v in q.weights), Fraction(0))


def _check_q(scen: Scenario, q: QDist):
    if any(not 0 <= i < scen.num_edges for i in q.support):
        raise InvalidArgument("q puts weight on a context the scenario lacks")


def beta(h, q: QDist, extremals=None) -> Fraction:
    scen = _scen(h)
    _check_q(scen, q)
    if extremals is None:
        extremals = extremal_models(scen)
    for e in extremals:
        if len(deterministic_contexts(scen, _probs(e))) == scen.num_edges:
            raise UndefinedBeta("scenario is KS-colourable: a deterministic extremal model exists")
    return max(weighted_zeta(scen, e, q) for e in extremals)


@dataclass
class Inequality:
    scenario: Scenario | None
    q: QDist
    beta: Fraction
    derivation: dict = field(default_factory=dict)

    @property
    def contexts(self) -> tuple:
        return self.q.support

    @property
    def bound_expression(self) -> str:
        terms = " + ".join(f"{fmt(v)}*C{i}" for i, v in self.q.weights)
        return f"Corr_q = {terms} <= {fmt(self.beta)}"

    def to_dict(self) -> dict:
        return {
            "contexts": list(self.contexts),
            "q": self.q.to_dict(),
            "beta": to_json_number(self.beta),
            "derivation": self.derivation,
            "bound_expression": self.bound_expression,
            "assumptions": [SOURCE_ASSUMPTION],
            "scenario": self.scenario.to_dict() if self.scenario else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Inequality":
        try:
            b = data["beta"]
            b = to_fraction(b["exact"] if isinstance(b, dict) else b)
            scen = Scenario.from_dict(data["scenario"]) if data.get("scenario") else None
            return cls(scen, QDist.from_dict(data["q"]), b, dict(data.get("derivation") or {}))
        except (KeyError, TypeError) as exc:
            raise InvalidArgument(f"malformed inequality JSON: {exc}") from exc


def make_inequality(h, c, q: QDist | None = None, extremals=None) -> Inequality:
    """Corr_q <= beta for q supported exactly on the context set ``c``.

    For uniform q on a MISC of size n-k+1 the closed form
    1 - (1 - p_max)/(n-k+1) is checked as an upper bound on beta.
    """
    from .misc import ContextSet, is_misc

    scen = _scen(h)
    idx = tuple(c.context_indices) if isinstance(c, ContextSet) else tuple(sorted(set(c)))
    if q is None:
        q = QDist.uniform(idx)
    if set(q.support) != set(idx):
        raise InvalidArgument(f"q is supported on {list(q.support)}, not on {list(idx)}")
    if extremals is None:
        extremals = extremal_models(scen)
    b = beta(scen, q, extremals)
    derivation = {"tag": "exact-max"}
    k = smallest_indeterministic_size(scen, extremals)
    size = scen.num_edges - k + 1
    if q.is_uniform() and len(idx) == size:
        report = is_misc(scen, idx, extremals)
        if report.is_misc and report.p_max is not None:
            bound = 1 - (1 - report.p_max) / size
            if b > bound:
                raise AssertionError(f"beta {fmt(b)} exceeds the closed-form bound {fmt(bound)}")
            derivation = {
                "tag": "closed-form-misc",
                "k": k,
                "p_max": fmt(report.p_max),
                "c": size,
                "closed_form": fmt(bound),
                "tight": b == bound,
            }
    return Inequality(scen, q, b, derivation)


@dataclass
class DataTable:
    """joint[i][x][y] = p(m_i = x, s_i = y | M_i, S_i)."""
    joint: dict

    def __post_init__(self):
        clean = {}
        for i, mat in self.joint.items():
            rows = [[to_fraction(v) for v in row] for row in mat]
            d = len(rows)
            if d == 0 or any(len(r) != d for r in rows):
                raise InvalidArgument(f"context {i}: joint table must be square and non-empty")
            if any(not 0 <= v <= 1 for r in rows for v in r):
                raise InvalidArgument(f"context {i}: entries must lie in [0, 1]")
            if sum(v for r in rows for v in r) != 1:
                raise InvalidArgument(f"context {i}: entries must sum to exactly 1")
            clean[int(i)] = tuple(tuple(r) for r in rows)
        self.joint = dict(sorted(clean.items()))

    def marginals(self, i: int) -> tuple:
        """p(s_i = y | S_i): column sums."""
        mat = self.joint[i]
        return tuple(sum(row[y] for row in mat) for y in range(len(mat)))

    def to_dict(self) -> dict:
        return {
            "contexts": [
                {"index": i, "joint": [[fmt(v) for v in row] for row in mat]}
                for i, mat in self.joint.items()
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DataTable":
        try:
            return cls({int(c["index"]): c["joint"] for c in data["contexts"]})
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidArgument):
                raise
            raise InvalidArgument(f"malformed data JSON: {exc}") from exc


def synthetic_table(dims: dict, eps=0) -> DataTable:
    """(1 - eps) * perfectly correlated + eps * uniform, per context.
    ``dims`` maps context index -> number of outcomes d."""
    eps = to_fraction(eps)
    if not 0 <= eps <= 1:
        raise InvalidArgument("eps must lie in [0, 1]")
    joint = {}
    for i, d in dims.items():
        joint[i] = [
            [(1 - eps) * Fraction(int(x == y), d) + eps * Fraction(1, d * d) for y in range(d)]
            for x in range(d)
        ]
    return DataTable(joint)


def corr(data: DataTable, q: QDist) -> Fraction:
    missing = [i for i in q.support if i not in data.joint]
    if missing:
        raise InvalidArgument(f"no data for contexts {missing}")
    return sum(
        (v * sum(data.joint[i][x][x] for x in range(len(data.joint[i]))) for i, v in q.weights),
        Fraction(0),
    )


@dataclass
class ViolationReport:
    corr: Fraction
    beta: Fraction
    violated: bool
    margin: Fraction

    def to_dict(self) -> dict:
        return {
            "corr": to_json_number(self.corr),
            "beta": to_json_number(self.beta),
            "violated": self.violated,
            "margin": to_json_number(self.margin),
        }


def evaluate(data: DataTable, ineq: Inequality) -> ViolationReport:
    c = corr(data, ineq.q)
    return ViolationReport(c, ineq.beta, c > ineq.beta, c - ineq.beta)


@dataclass
class NCModelAttempt:
    ontic_states: list
    feasible: bool
    failure_reason: str | None
    beta: Fraction
    contexts: tuple
    marginals: dict
    mu_retro: dict  # (lambda index, context) -> retrodicted outcome index
    ties: dict  # (lambda index, context) -> tied argmax outcomes, when > 1
    lambda_max: tuple
    lambda_detp: tuple
    nu: dict = field(default_factory=dict)
    lp_system: tuple | None = None  # (A, b, lambda column order)
    farkas: list | None = None
    table: DataTable | None = None
    scenario: Scenario | None = None

    def response(self, lam: int, context: int, outcome: int) -> Fraction:
        """xi(m = outcome | M_context, lambda)."""
        w = self.scenario.hyperedges[context][outcome]
        return self.ontic_states[lam].model[w]

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "failure_reason": self.failure_reason,
            "beta": to_json_number(self.beta),
            "contexts": list(self.contexts),
            "marginals": {str(i): [fmt(v) for v in m] for i, m in self.marginals.items()},
            "lambda_max": list(self.lambda_max),
            "lambda_detp": list(self.lambda_detp),
            "nu": {str(k): fmt(v) for k, v in self.nu.items()},
            "mu_retro": {f"{lam},{i}": y for (lam, i), y in sorted(self.mu_retro.items())
                         if lam in self.lambda_max},
            "ties": {f"{lam},{i}": list(t) for (lam, i), t in sorted(self.ties.items())
                     if lam in self.lambda_max},
            "farkas": [fmt(v) for v in self.farkas] if self.farkas else None,
            "table": self.table.to_dict() if self.table else None,
        }


def phen_system(lambdas, contexts, mu_retro, marginals):
    """Rows: sum nu = 1, then for each context and outcome y,
    sum over lambda retrodicting y of nu = p(s = y)."""
    a = [[Fraction(1)] * len(lambdas)]
    b = [Fraction(1)]
    for i in contexts:
        for y, target in enumerate(marginals[i]):
            a.append([Fraction(int(mu_retro[(lam, i)] == y)) for lam in lambdas])
            b.append(target)
    return a, b


def build_saturating_nc_model(h, q: QDist, source_marginals: dict | None = None,
                              extremals=None) -> NCModelAttempt:
    """Try to build a noncontextual model with Corr_q = beta.

    Ontic states are the extremal models; each retrodicts, per context, the
    outcome of largest probability (lowest index on ties). Weight is sought
    over the states attaining beta that retrodict only outcomes of nonzero
    requested marginal, subject to reproducing the marginals.
    """
    scen = _scen(h)
    if extremals is None:
        extremals = extremal_models(scen)
    extremals = list(extremals)
    b_val = beta(scen, q, extremals)
    contexts = q.support
    marg = {}
    for i in contexts:
        d = len(scen.hyperedges[i])
        given = None if source_marginals is None else source_marginals.get(i)
        if given is None:
            marg[i] = tuple(Fraction(1, d) for _ in range(d))
        else:
            vals = tuple(to_fraction(v) for v in given)
            if len(vals) != d or any(v < 0 for v in vals) or sum(vals) != 1:
                raise InvalidArgument(f"context {i}: marginal must be a distribution on {d} outcomes")
            marg[i] = vals
    mu_retro, ties = {}, {}
    for lam, e in enumerate(extremals):
        for i in contexts:
            vals = [e.model[w] for w in scen.hyperedges[i]]
            top = max(vals)
            best = tuple(x for x, v in enumerate(vals) if v == top)
            mu_retro[(lam, i)] = best[0]
            if len(best) > 1:
                ties[(lam, i)] = best
    lambda_max = tuple(lam for lam, e in enumerate(extremals) if weighted_zeta(scen, e, q) == b_val)
    lambda_detp = tuple(
        lam for lam in range(len(extremals))
        if all(marg[i][mu_retro[(lam, i)]] > 0 for i in contexts)
    )
    attempt = NCModelAttempt(
        ontic_states=extremals, feasible=False, failure_reason=None, beta=b_val,
        contexts=contexts, marginals=marg, mu_retro=mu_retro, ties=ties,
        lambda_max=lambda_max, lambda_detp=lambda_detp, scenario=scen,
    )
    usable = tuple(sorted(set(lambda_max) & set(lambda_detp)))
    if not usable:
        attempt.failure_reason = "lambda-intersection-empty"
        return attempt
    a, b = phen_system(usable, contexts, mu_retro, marg)
    attempt.lp_system = (a, b, usable)
    res = solve_lp([0] * len(usable), a, b)
    if res.status == INFEASIBLE:
        attempt.failure_reason = "phen-constraint-infeasible"
        attempt.farkas = res.farkas
        return attempt
    attempt.nu = {lam: v for lam, v in zip(usable, res.x) if v}
    attempt.feasible = True
    joint = {}
    for i in contexts:
        d = len(scen.hyperedges[i])
        mat = [[Fraction(0)] * d for _ in range(d)]
        for lam, weight in attempt.nu.items():
            y = mu_retro[(lam, i)]
            for x in range(d):
                mat[x][y] += attempt.response(lam, i, x) * weight
        joint[i] = mat
    attempt.table = DataTable(joint)
    return attempt
