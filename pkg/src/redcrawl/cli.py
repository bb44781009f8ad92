"""Command-line entry points: `redcrawl run` and `redcrawl gen`."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .graph import SYNTHETIC_MODES, count_colors, generate_synthetic, save_graph
from .harness import parse_config, run_experiment
from .oracle import LyingScenario


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="redcrawl",
        description="Budgeted crawling of hidden colored networks with unreliable informants.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment from a config file")
    run_p.add_argument("--config", required=True, help="key = value config file")
    run_p.add_argument("--strategy", help="override strategies (comma-separated: sr,rs,mrsr,mrn,redlearn)")
    run_p.add_argument("--scenario", choices=["ls1", "ls2"], help="override lying scenario")
    run_p.add_argument("--runs", type=int, help="override number of runs")
    run_p.add_argument("--budget-fraction", type=float, help="override monitor budget as a fraction of nodes")
    run_p.add_argument("--seed", type=int, help="override master seed")
    run_p.add_argument("--remove-red-red", action="store_true", default=None,
                       help="delete all edges between red nodes before crawling")
    run_p.add_argument("--out", help="override output directory")

    gen_p = sub.add_parser("gen", help="generate a synthetic world graph to files")
    gen_p.add_argument("--n", type=int, required=True)
    gen_p.add_argument("--red-fraction", type=float, required=True)
    gen_p.add_argument("--mode", choices=SYNTHETIC_MODES, required=True)
    gen_p.add_argument("--seed", type=int, required=True)
    gen_p.add_argument("--out", required=True, help="directory for edges.txt and nodes.csv")
    return parser


def _cmd_run(args) -> int:
    config = parse_config(args.config)
    if args.strategy:
        config.strategies = [s.strip() for s in args.strategy.split(",") if s.strip()]
    if args.scenario:
        config.scenario = LyingScenario.parse(args.scenario)
    if args.runs is not None:
        config.runs = args.runs
    if args.budget_fraction is not None:
        config.budget_fraction = args.budget_fraction
    if args.seed is not None:
        config.master_seed = args.seed
    if args.remove_red_red is not None:
        config.remove_red_red = args.remove_red_red
    if args.out:
        config.output_dir = args.out
    config.validate()

    result = run_experiment(config)
    world = result["world"]
    reds, blues = count_colors(world)
    print(f"{world.name}: {world.n} nodes, {world.num_edges()} edges, {reds} red / {blues} blue")
    print(f"budget {result['budget']} monitors, {config.runs} run(s), scenario {config.scenario}")
    print(f"{'strategy':<10} {'tier':>6} {'mean%red':>9} {'std':>7}")
    for row in result["summary"]:
        print(f"{row.strategy:<10} {row.tier:>6g} {row.mean_pct_red:>9.1f} {row.std_pct_red:>7.1f}")
    print(f"traces: {result['traces_csv']}")
    print(f"summary: {result['summary_csv']}")
    return 0


def _cmd_gen(args) -> int:
    g = generate_synthetic(args.n, args.red_fraction, args.mode, args.seed)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    edge_path = out_dir / "edges.txt"
    node_path = out_dir / "nodes.csv"
    save_graph(g, edge_path, node_path)
    reds, blues = count_colors(g)
    print(f"wrote {edge_path} and {node_path}: {g.n} nodes, {g.num_edges()} edges, {reds} red")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.command == "run":
        return _cmd_run(args)
    return _cmd_gen(args)


if __name__ == "__main__":
    sys.exit(main())
