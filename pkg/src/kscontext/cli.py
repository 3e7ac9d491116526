"""Contextuality scenarios from graphs: colourability, extremal models, MISCs, inequalities.

Every subcommand reads JSON, calls the library and writes JSON (or DOT);
exit codes: 0 ok, 10 violation, 2 invalid input, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .colourability import verdict
from .errors import BudgetExceeded, KSContextError, UndefinedBeta
from .extremal import extremal_models
from .graphs import Graph, make_claw, make_complete, make_complete_bipartite, make_cycle
from .misc import enumerate_irr_miscs, enumerate_miscs, is_irr_misc
from .rational import to_fraction, to_json_number
from .scenarios import Scenario, profile
from .two_reg import TwoRegScenario, matching_scenario, two_reg
from .witness import (
    DataTable,
    Inequality,
    QDist,
    beta,
    build_saturating_nc_model,
    corr,
    evaluate,
    make_inequality,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_VIOLATED = 10


class CLIError(KSContextError):
    pass


def _read_json(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CLIError(f"{path} is not valid JSON: {exc}") from exc


def load_scenario(path) -> Scenario:
    """A scenario file, or a graph file which is mapped through 2Reg."""
    data = _read_json(path)
    if not isinstance(data, dict):
        raise CLIError(f"{path}: expected a JSON object")
    if "hyperedges" in data:
        return Scenario.from_dict(data)
    if "edges" in data:
        return two_reg(Graph.from_dict(data)).scenario
    raise CLIError(f"{path}: neither a scenario (hyperedges) nor a graph (edges)")


def _contexts(text, h: Scenario):
    if text is None:
        return tuple(range(h.num_edges))
    try:
        return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError as exc:
        raise CLIError(f"bad context list {text!r}") from exc


def _q(arg, contexts) -> QDist:
    if arg is None or arg == "uniform":
        return QDist.uniform(contexts)
    return QDist.from_dict(_read_json(arg))


def _emit(args, payload):
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args):
    kind, params = args.kind, args.params
    try:
        nums = [int(p) for p in params] if kind != "from-file" else []
    except ValueError as exc:
        raise CLIError(f"parameters must be integers: {params}") from exc
    need = {"complete-bipartite": 2, "cycle": 1, "complete": 1, "claw": 0, "from-file": 1}
    if len(params) != need[kind]:
        raise CLIError(f"{kind} takes {need[kind]} parameter(s), got {len(params)}")
    if kind == "complete-bipartite":
        g = make_complete_bipartite(*nums)
    elif kind == "cycle":
        g = make_cycle(nums[0])
    elif kind == "complete":
        g = make_complete(nums[0])
    elif kind == "claw":
        g = make_claw()
    else:
        g = Graph.from_dict(_read_json(params[0]))
    _emit(args, g.to_dict())


def cmd_two_reg(args):
    g = Graph.from_dict(_read_json(args.graph))
    _emit(args, two_reg(g).to_dict())


def cmd_matching(args):
    g = Graph.from_dict(_read_json(args.graph))
    _emit(args, matching_scenario(g).to_dict())


def cmd_check_ks(args):
    h = load_scenario(args.input)
    v = verdict(h, args.method, args.budget)
    out = v.to_dict()
    out["profile"] = profile(h).to_dict()
    _emit(args, out)


def cmd_extremals(args):
    h = load_scenario(args.input)
    models = extremal_models(h, args.method, args.budget, args.parallel)
    _emit(args, [e.to_dict() for e in models])


def cmd_miscs(args):
    h = load_scenario(args.input)
    ex = extremal_models(h, budget=args.budget, parallel=args.parallel)
    if args.contexts is not None:
        sets = [_contexts(args.contexts, h)]
    elif args.irr:
        sets = [c.context_indices for c in enumerate_irr_miscs(h, ex, args.budget)]
    else:
        sets = [c.context_indices for c in enumerate_miscs(h, ex)]
    out = []
    for s in sets:
        rep = is_irr_misc(h, s, ex).to_dict()
        rep["contexts"] = list(s)
        out.append(rep)
    _emit(args, out)


def cmd_beta(args):
    h = load_scenario(args.input)
    q = _q(args.q, _contexts(args.contexts, h))
    ex = extremal_models(h, budget=args.budget, parallel=args.parallel)
    _emit(args, {"contexts": list(q.support), "beta": to_json_number(beta(h, q, ex))})


def cmd_ineq(args):
    h = load_scenario(args.input)
    ctx = _contexts(args.contexts, h)
    ex = extremal_models(h, budget=args.budget, parallel=args.parallel)
    _emit(args, make_inequality(h, ctx, _q(args.q, ctx), ex).to_dict())


def cmd_corr(args):
    data = DataTable.from_dict(_read_json(args.data))
    ctx = _contexts(args.contexts, None) if args.contexts else tuple(data.joint)
    _emit(args, {"contexts": list(ctx), "corr": to_json_number(corr(data, _q(args.q, ctx)))})


def cmd_evaluate(args):
    data = DataTable.from_dict(_read_json(args.data))
    ineq = Inequality.from_dict(_read_json(args.inequality))
    report = evaluate(data, ineq)
    _emit(args, report.to_dict())
    return EXIT_VIOLATED if report.violated else EXIT_OK


def cmd_ncmodel(args):
    h = load_scenario(args.input)
    ctx = _contexts(args.contexts, h)
    q = _q(args.q, ctx)
    marg = None
    if args.marginals:
        raw = _read_json(args.marginals)
        marg = {int(k): [to_fraction(v) for v in vals] for k, vals in raw.items()}
    ex = extremal_models(h, budget=args.budget, parallel=args.parallel)
    _emit(args, build_saturating_nc_model(h, q, marg, ex).to_dict())


def cmd_export_dot(args):
    data = _read_json(args.input)
    if isinstance(data, dict) and "edges" in data and not args.as_scenario:
        _emit(args, Graph.from_dict(data).to_dot())
    else:
        _emit(args, load_scenario(args.input).to_dot(args.style))


def cmd_pipeline(args):
    stage = "two-reg"
    try:
        g = Graph.from_dict(_read_json(args.graph))
        t = two_reg(g)
        h = t.scenario
        stage = "check-ks"
        v = verdict(t, "auto", args.budget)
        report = {
            "graph": g.to_dict(),
            "scenario": t.to_dict(),
            "profile": profile(h).to_dict(),
            "verdict": v.to_dict(),
        }
        stage = "extremals"
        ex = extremal_models(h, budget=args.budget, parallel=args.parallel)
        report["extremal_count"] = len(ex)
        report["irr_miscs"] = []
        if v.colourable:
            report["note"] = "KS-colourable: beta is undefined, no inequalities"
        else:
            stage = "miscs"
            for c in enumerate_irr_miscs(h, ex, args.budget):
                stage = "inequalities"
                ineq = make_inequality(h, c, None, ex)
                report["irr_miscs"].append({
                    "contexts": list(c.context_indices),
                    "edges": [list(g.edges[t.edge_origin[i]]) for i in c.context_indices],
                    "size": c.size,
                    "beta": to_json_number(ineq.beta),
                })
                stage = "miscs"
    except KSContextError as exc:
        raise type(exc)(f"[{stage}] {exc}") from exc
    _emit(args, report)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="cap on search-node expansions")
    common.add_argument("--parallel", action="store_true", default=argparse.SUPPRESS,
                        help="parallel extremal enumeration (general route)")
    common.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write here instead of stdout")

    p = argparse.ArgumentParser(prog="kscontext", description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--parallel", action="store_true", default=False)
    p.add_argument("--output", "-o", default=None)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("gen", cmd_gen, "generate a graph")
    sp.add_argument("kind", choices=["complete-bipartite", "cycle", "complete", "claw", "from-file"])
    sp.add_argument("params", nargs="*")

    sp = add("two-reg", cmd_two_reg, "map a graph to its 2Reg scenario")
    sp.add_argument("graph")
    sp = add("matching-scenario", cmd_matching, "Mat(L(G)) of a graph")
    sp.add_argument("graph")

    sp = add("check-ks", cmd_check_ks, "decide KS-colourability")
    sp.add_argument("input")
    sp.add_argument("--method", choices=["auto", "parity", "exhaustive"], default="auto")

    sp = add("extremals", cmd_extremals, "list extremal probabilistic models")
    sp.add_argument("input")
    sp.add_argument("--method", choices=["auto", "general", "structural"], default="auto")

    sp = add("miscs", cmd_miscs, "MISCs, or irrMISCs with --irr")
    sp.add_argument("input")
    sp.add_argument("--irr", action="store_true")
    sp.add_argument("--contexts", help="check one comma-separated context set")

    for name, func, help_ in (("beta", cmd_beta, "weighted max-predictability"),
                              ("ineq", cmd_ineq, "emit a noncontextuality inequality"),
                              ("ncmodel", cmd_ncmodel, "attempt a saturating noncontextual model")):
        sp = add(name, func, help_)
        sp.add_argument("input")
        sp.add_argument("--contexts", help="comma-separated context indices (default all)")
        sp.add_argument("--q", default="uniform", help="'uniform' or a q JSON file")
        if name == "ncmodel":
            sp.add_argument("--marginals", help='JSON {"<ctx>": ["num/den", ...]}')

    sp = add("corr", cmd_corr, "Corr_q of a data table")
    sp.add_argument("data")
    sp.add_argument("--contexts")
    sp.add_argument("--q", default="uniform")

    sp = add("evaluate", cmd_evaluate, "test data against an inequality (exit 10 if violated)")
    sp.add_argument("data")
    sp.add_argument("inequality")

    sp = add("export-dot", cmd_export_dot, "Graphviz rendering of a graph or scenario")
    sp.add_argument("input")
    sp.add_argument("--style", choices=["clique", "star"], default="clique")
    sp.add_argument("--as-scenario", action="store_true", help="render a graph file as its 2Reg scenario")

    sp = add("pipeline", cmd_pipeline, "graph -> scenario -> verdict -> extremals -> irrMISCs -> beta")
    sp.add_argument("graph")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (KSContextError, ValueError) as exc:
        kind = "beta undefined" if isinstance(exc, UndefinedBeta) else "invalid input"
        print(f"error: {kind}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
