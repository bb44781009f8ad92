"""Seeded experiment driver: runs, pairing, traces, and summary tables.

A run starts on a known red node, spends one monitor on it, then loops
strategy pick -> oracle answer -> observer ingest until the budget is
gone or the frontier empties. Per-run randomness is split into three
independent streams (honesty assignment, lie draws, strategy
tie-breaks), all derived from a per-run seed that itself comes from the
master seed and the run index only. Because neither the start node nor
the world streams depend on the strategy, every strategy in an
experiment faces the same sequence of worlds: a paired comparison.

Results land in two CSVs, a per-step trace (`run,strategy,step,node,
true_color,cum_red`) and a budget-tier summary (`strategy,tier,
mean_pct_red,std_pct_red,runs`). The same config always reproduces both
files byte for byte. "Reds found" counts monitored nodes whose true
color is red; stated colors are unreliable, so a red only counts once a
monitor has confirmed it.
"""

from __future__ import annotations

import csv
import hashlib
import logging
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, NamedTuple

from .classifier import ClassifierParams, build_training_set, fit
from .graph import (
    Color,
    SYNTHETIC_MODES,
    WorldGraph,
    count_colors,
    generate_synthetic,
    load_graph,
    remove_red_red_edges,
)
from .observer import ObserverState
from .oracle import LyingScenario, Oracle, assign_honesty
from .strategies import STRATEGY_NAMES, ExplorationExhausted, pick

logger = logging.getLogger(__name__)

TRACE_HEADER = ["run", "strategy", "step", "node", "true_color", "cum_red"]
SUMMARY_HEADER = ["strategy", "tier", "mean_pct_red", "std_pct_red", "runs"]


def derive_seed(master_seed: int, *parts) -> int:
    """Stable 64-bit seed from a master seed and context labels.

    Hash-based (not Python's salted `hash`) so the same config reproduces
    the same streams across processes and platforms.
    """
    text = ":".join([str(master_seed), *map(str, parts)])
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


class TraceStep(NamedTuple):
    step: int
    node: int
    true_color: Color
    cum_red: int


@dataclass
class RunTrace:
    """Per-step record of one seeded run; step 0 is the forced start monitor."""

    run_id: int
    strategy: str
    seed: int
    steps: list[TraceStep]

    def reds_at(self, monitors: int) -> int:
        """Cumulative confirmed reds after `monitors` placements.

        A run that exhausted its frontier early reports its final value.
        """
        if monitors < 1:
            return 0
        return self.steps[min(monitors, len(self.steps)) - 1].cum_red


@dataclass
class ExperimentConfig:
    """Everything one experiment needs; see README for the file keys."""

    edges: str | None = None
    nodes: str | None = None
    synthetic_mode: str | None = None
    synthetic_n: int = 500
    synthetic_red_fraction: float = 0.05
    synthetic_seed: int = 1
    scenario: LyingScenario = LyingScenario.LS1
    strategies: list[str] = field(default_factory=lambda: list(STRATEGY_NAMES))
    runs: int = 25
    budget_fraction: float = 0.5
    budget_tiers: list[float] = field(default_factory=lambda: [0.10, 0.25, 0.50])
    retrain_every: int = 1
    master_seed: int = 0
    remove_red_red: bool = False
    output_dir: str = "out"
    dump_reports: bool = False
    l2: float = 1e-3
    max_iter: int = 500
    grad_tol: float = 1e-6

    def validate(self) -> None:
        if (self.edges is None) != (self.nodes is None):
            raise ValueError("edges and nodes must be given together")
        if self.edges is None and self.synthetic_mode is None:
            raise ValueError("config needs either edges/nodes files or a synthetic_mode")
        if self.edges is not None and self.synthetic_mode is not None:
            raise ValueError("config gives both a file graph and a synthetic graph; pick one")
        if self.synthetic_mode is not None and self.synthetic_mode not in SYNTHETIC_MODES:
            raise ValueError(f"unknown synthetic_mode {self.synthetic_mode!r}")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if not 0.0 < self.budget_fraction <= 1.0:
            raise ValueError("budget_fraction must be in (0, 1]")
        for tier in self.budget_tiers:
            if not 0.0 < tier <= 1.0:
                raise ValueError(f"budget tier {tier} outside (0, 1]")
        if self.retrain_every < 1:
            raise ValueError("retrain_every must be at least 1")
        for s in self.strategies:
            if s not in STRATEGY_NAMES:
                raise ValueError(f"unknown strategy {s!r}: expected one of {STRATEGY_NAMES}")

    def classifier_params(self) -> ClassifierParams:
        return ClassifierParams(l2=self.l2, max_iter=self.max_iter, grad_tol=self.grad_tol)


_CONFIG_PARSERS: dict[str, Callable[[str], object]] = {
    "edges": str,
    "nodes": str,
    "synthetic_mode": str,
    "synthetic_n": int,
    "synthetic_red_fraction": float,
    "synthetic_seed": int,
    "scenario": LyingScenario.parse,
    "strategies": lambda v: [s.strip() for s in v.split(",") if s.strip()],
    "runs": int,
    "budget_fraction": float,
    "budget_tiers": lambda v: [float(t) for t in v.split(",") if t.strip()],
    "retrain_every": int,
    "master_seed": int,
    "remove_red_red": lambda v: _parse_bool(v),
    "output_dir": str,
    "dump_reports": lambda v: _parse_bool(v),
    "l2": float,
    "max_iter": int,
    "grad_tol": float,
}


def _parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


def parse_config(path) -> ExperimentConfig:
    """Read a `key = value` config file (# starts a comment)."""
    config = ExperimentConfig(strategies=list(STRATEGY_NAMES))
    with open(path, encoding="utf-8") as fh:
        for line_num, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_num}: expected 'key = value', got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _CONFIG_PARSERS:
                raise ValueError(f"{path}:{line_num}: unknown config key {key!r}")
            try:
                setattr(config, key, _CONFIG_PARSERS[key](value))
            except ValueError as exc:
                raise ValueError(f"{path}:{line_num}: bad value for {key}: {exc}") from None
    config.validate()
    return config


def run_single(
    world: WorldGraph,
    strategy: str,
    scenario: LyingScenario,
    start: int,
    seed: int,
    budget: int,
    retrain_every: int = 1,
    *,
    run_id: int = 0,
    classifier_params: ClassifierParams | None = None,
    report_log_path=None,
    step_callback=None,
) -> RunTrace:
    """Execute one seeded run of `strategy` and return its trace.

    Honesty is drawn from the run seed, the start node takes the first
    monitor, and then the loop of pick / answer / ingest continues until
    the budget runs out or no candidate remains. The learning strategy
    refits after every `retrain_every` placements. `step_callback`, if
    given, is called as `(state, decision)` after each pick and before
    the matching ingest.
    """
    if world.colors[start] is not Color.RED:
        raise ValueError(f"start node {start} is not red")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    honesty_rng = random.Random(derive_seed(seed, "honesty"))
    lies_rng = random.Random(derive_seed(seed, "lies"))
    tiebreak_rng = random.Random(derive_seed(seed, "tiebreak"))

    oracle = Oracle(assign_honesty(world, honesty_rng), scenario, lies_rng)
    state = ObserverState(start)
    state.ingest(oracle.place_monitor(start))
    cum_red = 1
    steps = [TraceStep(0, start, Color.RED, cum_red)]

    model = None
    placed_since_fit = 0
    params = classifier_params or ClassifierParams()
    while len(steps) < budget:
        if strategy == "redlearn" and (model is None or placed_since_fit >= retrain_every):
            model = fit(build_training_set(state), params)
            placed_since_fit = 0
        try:
            decision = pick(strategy, state, tiebreak_rng, model)
        except ExplorationExhausted:
            logger.debug("run %d (%s): frontier exhausted after %d monitors", run_id, strategy, len(steps))
            break
        if step_callback is not None:
            step_callback(state, decision)
        assert decision.chosen not in state.monitored
        report = oracle.place_monitor(decision.chosen)
        state.ingest(report)
        placed_since_fit += 1
        if report.true_color is Color.RED:
            cum_red += 1
        steps.append(TraceStep(len(steps), decision.chosen, report.true_color, cum_red))

    if report_log_path is not None:
        state.dump_report_log(report_log_path)
    return RunTrace(run_id=run_id, strategy=strategy, seed=seed, steps=steps)


class SummaryRow(NamedTuple):
    strategy: str
    tier: float
    mean_pct_red: float
    std_pct_red: float
    runs: int


def summarize(traces: list[RunTrace], tiers: list[float], total_reds: int, n_nodes: int) -> list[SummaryRow]:
    """Mean and std of the percentage of reds found at each budget tier.

    A tier maps to `floor(tier * n_nodes)` monitors (the forced start
    monitor counts as the first). Runs that ended before a tier
    contribute their final value and are flagged in the log.
    """
    by_strategy: dict[str, list[RunTrace]] = {}
    for trace in traces:
        by_strategy.setdefault(trace.strategy, []).append(trace)
    rows = []
    for strategy, group in by_strategy.items():
        for tier in tiers:
            monitors = max(1, math.floor(tier * n_nodes))
            short = sum(1 for t in group if len(t.steps) < monitors)
            if short:
                logger.warning(
                    "%s tier %g: %d/%d run(s) exhausted candidates before %d monitors; using final values",
                    strategy, tier, short, len(group), monitors,
                )
            pcts = [100.0 * t.reds_at(monitors) / total_reds for t in group]
            mean = sum(pcts) / len(pcts)
            var = sum((p - mean) ** 2 for p in pcts) / len(pcts)
            rows.append(SummaryRow(strategy, tier, mean, math.sqrt(var), len(group)))
    return rows


def run_experiment(config: ExperimentConfig) -> dict:
    """Run every (strategy, run) cell of `config` and write the CSVs.

    Start nodes and per-run seeds are derived from the master seed once
    and reused for every strategy. Returns the output paths, the summary
    rows, and the traces.
    """
    config.validate()
    if config.edges is not None:
        world = load_graph(config.edges, config.nodes)
    else:
        world = generate_synthetic(
            config.synthetic_n,
            config.synthetic_red_fraction,
            config.synthetic_mode,
            config.synthetic_seed,
        )
    if config.remove_red_red:
        world = remove_red_red_edges(world)

    total_reds, _ = count_colors(world)
    if total_reds == 0:
        raise ValueError(f"graph {world.name!r} has no red nodes to start from")
    red_ids = world.red_ids()
    budget = max(1, math.floor(config.budget_fraction * world.n))

    run_params = []
    for i in range(config.runs):
        start_rng = random.Random(derive_seed(config.master_seed, i, "start"))
        run_params.append((start_rng.choice(red_ids), derive_seed(config.master_seed, i, "run")))

    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    traces: list[RunTrace] = []
    for strategy in config.strategies:
        for i, (start, seed) in enumerate(run_params):
            report_log_path = (
                out_dir / f"reports_{strategy}_run{i}.jsonl" if config.dump_reports else None
            )
            trace = run_single(
                world,
                strategy,
                config.scenario,
                start,
                seed,
                budget,
                config.retrain_every,
                run_id=i,
                classifier_params=config.classifier_params(),
                report_log_path=report_log_path,
            )
            traces.append(trace)
        logger.info("strategy %s: %d runs done", strategy, config.runs)

    traces_path = out_dir / "traces.csv"
    with open(traces_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_HEADER)
        for trace in traces:
            for step in trace.steps:
                writer.writerow([
                    trace.run_id,
                    trace.strategy,
                    step.step,
                    world.labels[step.node],
                    step.true_color.value,
                    step.cum_red,
                ])

    rows = summarize(traces, config.budget_tiers, total_reds, world.n)
    summary_path = out_dir / "summary.csv"
    with open(summary_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_HEADER)
        for row in rows:
            writer.writerow([
                row.strategy,
                f"{row.tier:g}",
                f"{row.mean_pct_red:.4f}",
                f"{row.std_pct_red:.4f}",
                row.runs,
            ])

    return {
        "world": world,
        "budget": budget,
        "total_reds": total_reds,
        "traces_csv": traces_path,
        "summary_csv": summary_path,
        "summary": rows,
        "traces": traces,
    }
