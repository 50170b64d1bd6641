"""Command-line entry point: ``uskyline run|sweep|stats``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .errors import ConfigurationError, EdgeListParseError, GraphValidationError, UskylineError
from .graph import load_edge_list, stats
from .harness import load_plan_graph, parse_plan, plan_from_mapping, run_plan

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INFEASIBLE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="uskyline", description="Dynamic skyline queries on uncertain graphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run one strategy/semantics configuration")
    run.add_argument("--graph", required=True, type=Path)
    run.add_argument("--distance", default="majority", help="majority, expected, or both comma-separated")
    run.add_argument("--strategy", default="rand", help="rand, hdeg, hclus (comma-separated for several)")
    run.add_argument("--query-size", default="2", help="query size(s), comma-separated")
    run.add_argument("--samples", type=int, default=1000)
    run.add_argument("--weighting-mode", choices=("paper_weighted", "frequency"), default="paper_weighted")
    run.add_argument("--max-hops", type=int, default=4)
    run.add_argument("--formula-mode", choices=("definition", "algorithm_literal"), default="definition")
    run.add_argument("--threshold", type=float, default=400.0)
    run.add_argument("--skip-distance-pruning", action="store_true")
    run.add_argument("--degree-threshold", type=int)
    run.add_argument("--clustering-threshold", type=float, default=0.0)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--repeats", type=int, default=1)
    run.add_argument("--share-samples", action="store_true")
    run.add_argument("--synthesize", choices=("auto", "always", "never"), default="auto")
    run.add_argument("--dataset")
    run.add_argument("--out", type=Path)

    sweep = sub.add_parser("sweep", help="run an experiment plan file")
    sweep.add_argument("--plan", required=True, type=Path)
    sweep.add_argument("--out", type=Path, help="override the plan's output path")

    st = sub.add_parser("stats", help="print basic graph statistics")
    st.add_argument("--graph", required=True, type=Path)
    return parser


def _plan_from_args(args):
    values = {
        "graph": str(args.graph),
        "distance": args.distance,
        "strategy": args.strategy,
        "query-size": args.query_size,
        "samples": args.samples,
        "weighting-mode": args.weighting_mode,
        "max-hops": args.max_hops,
        "formula-mode": args.formula_mode,
        "threshold": args.threshold,
        "skip-distance-pruning": str(args.skip_distance_pruning),
        "clustering-threshold": args.clustering_threshold,
        "seed": args.seed,
        "repeats": args.repeats,
        "share-samples": str(args.share_samples),
        "synthesize": args.synthesize,
    }
    if args.degree_threshold is not None:
        values["degree-threshold"] = args.degree_threshold
    if args.dataset:
        values["dataset"] = args.dataset
    if args.out:
        values["out"] = str(args.out)
    return plan_from_mapping(values)


def _print_records(records):
    for r in records:
        if r.skipped:
            print(f"{r.strategy:>5} k={r.query_size:<3} rep={r.repeat:<3} {r.semantics:<8} {r.status}")
        else:
            print(
                f"{r.strategy:>5} k={r.query_size:<3} rep={r.repeat:<3} {r.semantics:<8} "
                f"|CS|={r.candidate_size:<6} |S|={r.skyline_size:<6} t={r.total:.4f}s"
            )


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "stats":
            graph = load_edge_list(args.graph, default_weight=1.0, default_prob=1.0)
            s = stats(graph)
            print(f"n           {s.n}")
            print(f"m           {s.m}")
            print(f"density     {s.density:.6e}")
            print(f"avg_degree  {s.avg_degree:.4f}")
            print(f"max_degree  {s.max_degree}")
            return EXIT_OK

        if args.command == "sweep":
            plan = parse_plan(args.plan)
            if args.out is not None:
                plan = replace(plan, out=args.out)
        else:
            plan = _plan_from_args(args)
        graph = load_plan_graph(plan)
        records = run_plan(plan, graph)
    except (EdgeListParseError, GraphValidationError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"uskyline: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ConfigurationError, ValueError, UskylineError) as exc:
        print(f"uskyline: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    _print_records(records)
    if records and all(r.skipped for r in records):
        print("uskyline: every run was skipped", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
