"""Command-line driver: ``localsim {generate,run,verify,experiment}``."""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
from pathlib import Path
from typing import Any

from . import formats
from .algorithms import (
    PipelineParams,
    ProcedureError,
    WhpFailure,
    approximate,
    color_bounded_degree,
    dominate,
    partition,
    pipeline,
)
from .engine import EngineError, collect_topology, run as run_engine
from .graph import Graph, NetworkDecomposition, generate_clique_path, generate_gnp, generate_random_regular, induced_subgraph
from .harness import EXPERIMENTS, trial_harness
from .verify import verify_coloring, verify_decomposition, verify_dominating_set

PROCEDURES = ("partition", "color", "dominate", "collect-topology", "approximate", "pipeline")

EXIT_IO = 1
EXIT_USAGE = 2
EXIT_WHP = 3
EXIT_PROCEDURE = 4
EXIT_VERIFY = 5


class CliError(Exception):
    def __init__(self, kind: str, message: str, code: int, **extra):
        super().__init__(message)
        self.kind = kind
        self.code = code
        self.extra = extra


def _default_seed() -> int:
    raw = os.environ.get("LOCALSIM_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError("usage", f"LOCALSIM_SEED must be an integer, got {raw!r}", EXIT_USAGE) from None


def _add_graph_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--graph", type=Path, help="graph file ('n m' header, then 'u v' lines)")
    src.add_argument("--gnp", nargs=2, metavar=("N", "P"), help="Erdős–Rényi G(N, P)")
    src.add_argument("--clique-path", nargs=3, type=int, metavar=("K1", "K2", "LEN"))
    src.add_argument("--regular", nargs=2, type=int, metavar=("N", "D"), help="random D-regular graph")
    p.add_argument("--graph-seed", type=int, default=None, help="seed for generated graphs (default: --seed)")


def _add_params(p: argparse.ArgumentParser) -> None:
    defaults = PipelineParams()
    p.add_argument("--epsilon", type=float, default=defaults.epsilon)
    p.add_argument("--mu", type=float, default=defaults.mu)
    p.add_argument("--k-degree", type=float, default=defaults.k_degree)
    p.add_argument("--k-iters-color", type=float, default=defaults.k_iters_color)
    p.add_argument("--k-iters-dominate", type=float, default=defaults.k_iters_dominate)
    p.add_argument("--round-budget", type=int, default=None)
    p.add_argument("--iter-budget", type=int, default=None)
    p.add_argument("--cluster-cap", type=int, default=defaults.cluster_cap)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="localsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a generated graph file")
    _add_graph_source(gen)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", type=Path, default=None, help="output path (stdout if omitted)")

    run = sub.add_parser("run", help="run a procedure and auto-verify its output")
    _add_graph_source(run)
    run.add_argument("--procedure", choices=PROCEDURES, default="pipeline")
    _add_params(run)
    run.add_argument("--delta-bound", type=int, default=None, help="color: degree bound (default: max degree)")
    run.add_argument("--radius", type=int, default=1, help="collect-topology: radius")
    run.add_argument("--decomposition", type=Path, default=None, help="approximate: decomposition JSON")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--trace", type=Path, default=None, help="write the run trace JSON here")
    run.add_argument("--result", type=Path, default=None, help="write labels/colorings and reports here")
    run.add_argument("--dot", type=Path, default=None, help="write a DOT rendering of the labeling")
    run.add_argument("--no-timestamp", action="store_true")

    ver = sub.add_parser("verify", help="verify a coloring, decomposition or dominating set")
    _add_graph_source(ver)
    kind = ver.add_mutually_exclusive_group(required=True)
    kind.add_argument("--coloring", type=Path, help='JSON {"labels": {v: color}} or {v: color}')
    kind.add_argument("--decomposition", type=Path, help='JSON {"d", "c", "labels"}')
    kind.add_argument("--dominating-set", type=Path, help="JSON list of vertex IDs")
    ver.add_argument("--weak", action="store_true", help="measure weak instead of strong cluster diameter")
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--report", type=Path, default=None)
    ver.add_argument("--no-timestamp", action="store_true")

    exp = sub.add_parser("experiment", help="repeat a seeded experiment and summarize")
    exp.add_argument("--name", required=True, choices=sorted(EXPERIMENTS))
    exp.add_argument("--n", type=int, default=None)
    exp.add_argument("--p", type=float, default=None)
    exp.add_argument("--degree", type=int, default=None, help="color-termination: regular degree")
    exp.add_argument("--epsilon", type=float, default=None)
    exp.add_argument("--k-degree", type=float, default=None)
    exp.add_argument("--round-budget", type=int, default=None)
    exp.add_argument("--iter-budget", type=int, default=None)
    exp.add_argument("--trials", type=int, default=100)
    exp.add_argument("--seed", type=int, default=None)
    exp.add_argument("--csv", type=Path, default=None)
    exp.add_argument("--json", type=Path, default=None)
    exp.add_argument("--no-timestamp", action="store_true")
    return parser


# --- helpers ---------------------------------------------------------------------


def _params(args) -> PipelineParams:
    return PipelineParams(
        epsilon=args.epsilon, mu=args.mu, k_degree=args.k_degree, k_iters_color=args.k_iters_color,
        k_iters_dominate=args.k_iters_dominate, round_budget=args.round_budget,
        iter_budget=args.iter_budget, cluster_cap=args.cluster_cap,
    )


def _load_graph(args, seed: int) -> tuple[Graph, dict[str, Any]]:
    gseed = seed if args.graph_seed is None else args.graph_seed
    if args.graph is not None:
        return formats.load_graph(args.graph), {"file": str(args.graph)}
    if args.gnp is not None:
        n, p = int(args.gnp[0]), float(args.gnp[1])
        return generate_gnp(n, p, gseed), {"gnp": [n, p], "graph_seed": gseed}
    if args.clique_path is not None:
        k1, k2, length = args.clique_path
        return generate_clique_path(k1, k2, length), {"clique_path": [k1, k2, length]}
    n, d = args.regular
    return generate_random_regular(n, d, gseed), {"regular": [n, d], "graph_seed": gseed}


def _config(args, seed: int, source: dict[str, Any] | None = None) -> dict[str, Any]:
    cfg = {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items())
           if k not in ("no_timestamp", "graph", "gnp", "clique_path", "regular", "graph_seed")}
    cfg["seed"] = seed
    if source is not None:
        cfg["graph_source"] = source
    if not getattr(args, "no_timestamp", True):
        cfg["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return cfg


def _write(path: Path | None, text: str) -> None:
    if path is None:
        return
    try:
        path.write_text(text)
    except OSError as exc:
        raise CliError("io", f"cannot write {path}: {exc}", EXIT_IO) from None


def _read_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc}", EXIT_IO) from None
    except json.JSONDecodeError as exc:
        raise CliError("io", f"{path} is not valid JSON: {exc}", EXIT_IO) from None


def _section(doc: Any, key: str) -> Any:
    """Accept either a bare artifact or a ``run --result`` document that holds it under ``key``."""
    if isinstance(doc, dict) and "config" in doc and key in doc:
        return doc[key]
    return doc


def _labels_from(doc: Any) -> dict[int, int]:
    doc = _section(doc, "coloring")
    if isinstance(doc, dict) and "labels" in doc:
        doc = doc["labels"]
    try:
        return {int(v): int(c) for v, c in doc.items()}
    except (AttributeError, TypeError, ValueError):
        raise CliError("io", "coloring must be a JSON object mapping vertex to color", EXIT_IO) from None


# --- commands ---------------------------------------------------------------------


def cmd_generate(args, out) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    g, _ = _load_graph(args, seed)
    text = f"# localsim generate seed={seed}\n" + formats.dumps_graph(g)
    if args.out is None:
        out.write(text)
    else:
        _write(args.out, text)
        print(f"wrote {g!r} to {args.out}", file=out)
    return 0


def _run_procedure(args, g: Graph, seed: int) -> tuple[Any, dict[str, Any], dict[int, int] | None]:
    """Return (trace, result document, labeling to render)."""
    proc = args.procedure
    if proc == "partition":
        res = partition(g, seed)
        dom = verify_dominating_set(induced_subgraph(g, res.A), res.D)
        doc = {"A": res.A, "B": res.B, "D": res.D, "reports": {"dominating_set": dom.to_json()}}
        return res.trace, doc, {v: 1 if v in res.A else 2 for v in g.vertices}
    if proc == "color":
        bound = args.delta_bound if args.delta_bound is not None else max(g.max_degree, 1)
        res = color_bounded_degree(g, bound, args.epsilon, mu=args.mu, round_budget=args.round_budget, seed=seed)
        rep = verify_coloring(g, res.colors)
        doc = {"palette": res.palette, "coloring": res.colors, "reports": {"coloring": rep.to_json()}}
        return res.trace, doc, res.colors
    if proc == "dominate":
        params = _params(args)
        part = partition(g, seed)
        gA = induced_subgraph(g, part.A)
        res = dominate(gA, part.D, params.epsilon, params.dominate_iterations, seed + 1, n=g.n)
        nd = NetworkDecomposition.from_labels(gA, res.labels, 2, res.label_range)
        rep = verify_decomposition(gA, nd)
        doc = {"A": part.A, "D": part.D, "labels": res.labels, "reports": {"decomposition": rep.to_json()}}
        labels = dict(res.labels)
        labels.update({v: res.label_range + 1 for v in part.B})
        return res.trace, doc, labels
    if proc == "collect-topology":
        trace = run_engine(g, collect_topology(args.radius), seed, max_rounds=args.radius + 1)
        doc = {"radius": args.radius,
               "neighborhood_sizes": {v: len(t.vertices) for v, t in trace.outputs.items()}}
        return trace, doc, None
    if proc == "approximate":
        if args.decomposition is None:
            raise CliError("usage", "approximate needs --decomposition", EXIT_USAGE)
        nd = formats.decomposition_from_json(g, _read_json(args.decomposition))
        res = approximate(g, nd, seed, cap=args.cluster_cap)
        rep = verify_coloring(g, res.coloring)
        doc = {"coloring": res.coloring, "reports": {"coloring": rep.to_json()}}
        return res.trace, doc, res.coloring
    res = pipeline(g, _params(args), seed)
    col = verify_coloring(g, res.coloring)
    dec = verify_decomposition(g, res.decomposition)
    doc = {
        "decomposition": formats.decomposition_to_json(res.decomposition),
        "coloring": res.coloring,
        "t": res.t,
        "reports": {"coloring": col.to_json(), "decomposition": dec.to_json()},
    }
    return res.trace, doc, dict(res.decomposition.assignment)


def cmd_run(args, out) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    g, source = _load_graph(args, seed)
    cfg = _config(args, seed, source)
    trace, doc, labels = _run_procedure(args, g, seed)
    trace_doc = {"config": cfg, **trace.to_json()}
    _write(args.trace, formats.dumps_json(trace_doc))
    _write(args.result, formats.dumps_json({"config": cfg, **doc}))
    if args.dot is not None and labels is not None:
        _write(args.dot, f"// config: {json.dumps(cfg, sort_keys=True)}\n" + formats.to_dot(g, labels))
    reports = doc.get("reports", {})
    print(f"procedure={args.procedure} n={g.n} m={g.m} seed={seed} rounds={trace.rounds_executed}", file=out)
    for name, rep in reports.items():
        status = "ok" if rep["passed"] else f"FAILED ({len(rep['violations'])} violations)"
        measured = " ".join(f"{k}={v}" for k, v in sorted(rep["measured"].items()))
        print(f"  {name}: {status} {measured}", file=out)
    if any(not rep["passed"] for rep in reports.values()):
        raise CliError("verification-failed", "automatic verification failed", EXIT_VERIFY)
    return 0


def cmd_verify(args, out) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    g, source = _load_graph(args, seed)
    cfg = _config(args, seed, source)
    if args.coloring is not None:
        rep = verify_coloring(g, _labels_from(_read_json(args.coloring)))
    elif args.decomposition is not None:
        nd = formats.decomposition_from_json(g, _section(_read_json(args.decomposition), "decomposition"))
        rep = verify_decomposition(g, nd, strong=not args.weak)
    else:
        rep = verify_dominating_set(g, [int(v) for v in _section(_read_json(args.dominating_set), "D")])
    _write(args.report, formats.dumps_json({"config": cfg, **rep.to_json()}))
    print(("passed " if rep.passed else "FAILED ") + json.dumps(formats.jsonable(rep.measured), sort_keys=True), file=out)
    for kind, witness in rep.violations[:10]:
        print(f"  {kind}: {witness}", file=out)
    return 0 if rep.passed else EXIT_VERIFY


def cmd_experiment(args, out) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    config = {k: getattr(args, k) for k in ("n", "p", "degree", "epsilon", "k_degree", "round_budget", "iter_budget")
              if getattr(args, k) is not None}
    try:
        summary = trial_harness(args.name, args.trials, seed, **config)
    except TypeError as exc:
        raise CliError("usage", f"experiment {args.name} does not accept these options: {exc}", EXIT_USAGE) from None
    cfg = _config(args, seed)
    _write(args.json, formats.dumps_json({"config": cfg, **summary.to_json()}))
    _write(args.csv, f"# config={json.dumps(cfg, sort_keys=True)}\n" + summary.to_csv())
    print(f"experiment={args.name} trials={summary.trials} successes={summary.successes} "
          f"rate={summary.success_rate:.3f} failures={summary.failures}", file=out)
    for k, ext in summary.extremes().items():
        print(f"  {k}: min={ext['min']} max={ext['max']} mean={ext['mean']:.3f}", file=out)
    return 0


COMMANDS = {"generate": cmd_generate, "run": cmd_run, "verify": cmd_verify, "experiment": cmd_experiment}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except CliError as exc:
        err = {"error": exc.kind, "message": str(exc), **exc.extra}
        code = exc.code
    except WhpFailure as exc:
        err = {"error": "whp-failure", "stage": exc.stage, "kind": exc.kind, "message": str(exc)}
        code = EXIT_WHP
    except ProcedureError as exc:
        err = {"error": "procedure-error", "stage": exc.stage, "kind": exc.kind, "message": str(exc)}
        code = EXIT_PROCEDURE
    except EngineError as exc:
        err = {"error": "engine-error", "kind": type(exc).__name__, "message": str(exc)}
        code = EXIT_PROCEDURE
    except (OSError, formats.GraphFormatError) as exc:
        err = {"error": "io", "message": str(exc)}
        code = EXIT_IO
    except ValueError as exc:
        err = {"error": "usage", "message": str(exc)}
        code = EXIT_USAGE
    print(json.dumps(err, sort_keys=True), file=sys.stderr)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
