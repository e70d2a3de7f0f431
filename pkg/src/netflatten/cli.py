"""Command line entry point.

Exit codes: 0 on success, 1 on usage errors, 2 on runtime errors.
"""

from __future__ import annotations

import argparse
import difflib
import json
import logging
import sys
from pathlib import Path

from . import centrality
from .clustering import clustering_report
from .curve import DegenerateSampleError, averaged_curve, curve_peak, fit_gamma, read_curve_csv
from .experiment import ExperimentConfig, default_workers, run_experiment, write_report
from .generators import GrowthSpec, generate
from .graph import diameter, is_connected, read_edge_list, write_edge_list
from .isolation import ThresholdUnreachable, scenario1, scenario2

EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        hint = _suggest(self, message)
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}{hint}\n")
        raise UsageError(message)


def _all_options(parser: argparse.ArgumentParser) -> list[str]:
    opts = list(parser._option_string_actions)
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sub in action.choices.values():
                opts.extend(_all_options(sub))
            opts.extend(action.choices)
    return opts


def _suggest(parser, message: str) -> str:
    words = [w.strip(",'") for w in message.split() if w.strip(",'").startswith("-")]
    words += [w.strip("'") for w in message.split("'")[1::2]]
    options = _all_options(parser)
    for w in words:
        close = difflib.get_close_matches(w, options, n=1)
        if close and close[0] != w:
            return f" (did you mean {close[0]}?)"
    return ""


def _dump(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def cmd_generate(args) -> int:
    spec = GrowthSpec(args.n, args.m, args.m if args.model == "ba" else args.m0, args.seed)
    g = generate(args.model, spec.n, spec.m, spec.m0_pa, spec.seed)
    meta = {"model": args.model, **spec.to_dict(), "edges": g.n_edges}
    write_edge_list(g, args.out, header=f"{args.model} n={spec.n} m={spec.m} "
                                        f"m0_pa={spec.m0_pa} seed={spec.seed}")
    Path(str(args.out) + ".json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    return 0


def cmd_analyze(args) -> int:
    g = read_edge_list(args.input)
    metrics = set(args.metrics)
    if "all" in metrics:
        metrics = {"clustering", "centrality", "curve"}
    out = {"nodes": g.n, "edges": g.n_edges, "connected": is_connected(g)}
    if "clustering" in metrics:
        out["clustering"] = clustering_report(g).to_dict()
    if "centrality" in metrics:
        scores = centrality.compute(g, args.measure, args.kappa, args.damping)
        out["centrality"] = scores.to_dict()
        out["centrality"]["top"] = centrality.rank_top(scores, min(args.top, g.n_active))
    if "curve" in metrics:
        curve = averaged_curve(g, args.trials, args.seed)
        block = {"curve": curve.as_dict(), "peak": list(curve_peak(curve))}
        try:
            block["gamma"] = fit_gamma(curve).as_dict()
        except DegenerateSampleError:
            block["gamma"] = None
        if out["connected"]:
            block["diameter"] = diameter(g)
        rep = clustering_report(g)
        block["gcc1"], block["gcc2"] = rep.gcc1, rep.gcc2
        out["curve"] = block
        if args.curve_csv:
            curve.to_csv(args.curve_csv)
    _dump(out, args.out)
    return 0


def cmd_isolate(args) -> int:
    g = read_edge_list(args.input)
    kw = dict(recompute=args.recompute, kappa=args.kappa, damping=args.damping)
    status = 0
    try:
        if args.scenario == "fraction":
            rep = scenario1(g, args.measure, args.value, args.trials, args.seed, **kw)
        else:
            rep = scenario2(g, args.measure, args.value, args.trials, args.seed, **kw)
        body = rep.as_dict()
    except ThresholdUnreachable as exc:
        body = {**exc.report.as_dict(), "error": str(exc)}
        logging.error("%s", exc)
        status = EXIT_RUNTIME
    _dump(body, args.out)
    return status


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig.from_json(args.config)
    if args.seed is not None:
        cfg.master_seed = args.seed
    rep = run_experiment(cfg, args.workers)
    write_report(rep, args.out, args.format)
    if rep.failures:
        logging.warning("%d failed trial records", rep.failures)
    return 0


def cmd_fit_gamma(args) -> int:
    p = fit_gamma(read_curve_csv(args.input))
    print(json.dumps(p.as_dict()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog="netflatten", description="Scale-free network infection-curve toolkit",
                     formatter_class=fmt)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="grow a BA or HK network", formatter_class=fmt)
    p.add_argument("--model", choices=["ba", "hk"], required=True)
    p.add_argument("--n", type=int, required=True, help="final node count")
    p.add_argument("--m", type=int, required=True, help="links per new node")
    p.add_argument("--m0", type=int, default=1, help="preferential links per new node (hk only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="edge-list path; metadata goes to <out>.json")
    p.set_defaults(func=cmd_generate)

    def centrality_opts(p):
        p.add_argument("--measure", choices=centrality.MEASURES, default="degree")
        p.add_argument("--kappa", type=float, default=centrality.DEFAULT_KAPPA)
        p.add_argument("--damping", type=float, default=centrality.DEFAULT_DAMPING)

    p = sub.add_parser("analyze", help="clustering, centrality and curve metrics", formatter_class=fmt)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--metrics", nargs="+", default=["all"],
                   choices=["clustering", "centrality", "curve", "all"])
    centrality_opts(p)
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--trials", type=int, default=None, help="curve sources (default: all nodes)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--curve-csv", default=None, help="also write the averaged curve as CSV")
    p.add_argument("--out", default=None, help="JSON output path (default: stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("isolate", help="targeted isolation scenario", formatter_class=fmt)
    p.add_argument("--in", dest="input", required=True)
    centrality_opts(p)
    p.add_argument("--scenario", choices=["fraction", "threshold"], required=True)
    p.add_argument("--value", type=float, required=True, help="fraction or peak threshold")
    p.add_argument("--trials", type=int, default=None, help="curve sources (default: all)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--recompute", action="store_true", help="re-rank after each isolation")
    p.add_argument("--out", default=None, help="report path (default: stdout)")
    p.set_defaults(func=cmd_isolate)

    p = sub.add_parser("experiment", help="run a Monte-Carlo experiment config", formatter_class=fmt)
    p.add_argument("--config", required=True, help="JSON file with ExperimentConfig fields")
    p.add_argument("--out", default="report.json")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--seed", type=int, default=None, help="override master_seed")
    p.add_argument("--workers", type=int, default=default_workers(),
                   help="parallel trials (env NETFLATTEN_WORKERS)")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("fit-gamma", help="fit Gamma parameters to a curve CSV", formatter_class=fmt)
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_fit_gamma)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001
        logging.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
