"""Command-line front end: graph generation, simulation runs, replication recipes, analysis.

Exit status is 0 on success, 1 on a usage error and 2 on a runtime or IO error.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .blll import ConfigurationError, NoiseParams, run_blll
from .cfcm import run_cfcm
from .game import ActionProfile, parse_profile, potential
from .graph import (
    GenerationError,
    Graph,
    GraphError,
    complete_graph,
    cycle_graph,
    generate_random_geometric,
    load_graph,
    nu,
    path_graph,
    save_graph,
    star_graph,
)
from .replicate import RECIPES, replicate
from .stability import (
    BudgetExceeded,
    OccupancyStats,
    brute_force_max_coverage,
    find_greedy_trap,
    is_greedy_trap,
    max_coverage_milp,
    occupancy_statistics,
)
from .trace import TraceRecord, derive_seed, write_trace

GENERATORS = ("rgg", "path", "star", "cycle", "complete")
DEFAULT_RADIUS = 0.17


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_graph(kind: str, n: int, radius: float = DEFAULT_RADIUS, seed: int = 0) -> Graph:
    """Build one of the named generator families on ``n`` nodes.

    ``star`` with ``n`` nodes has ``n - 1`` leaves; ``rgg`` draws its points
    from the ``graph`` substream of ``seed``.
    """
    if kind not in GENERATORS:
        raise UsageError(f"unknown graph type {kind!r}; choose from {', '.join(GENERATORS)}")
    if n < 1:
        raise UsageError(f"--n must be positive, got {n}")
    if kind == "rgg":
        return generate_random_geometric(n, radius, derive_seed(seed, "graph"))
    if kind == "star":
        return star_graph(n - 1)
    return {"path": path_graph, "cycle": cycle_graph, "complete": complete_graph}[kind](n)


def parse_generator_spec(text: str, seed: int) -> Graph:
    """``path:5``, ``star:5``, ``cycle:12``, ``complete:4`` or ``rgg:50:0.17``."""
    parts = text.split(":")
    try:
        if parts[0] == "rgg" and len(parts) in (2, 3):
            radius = float(parts[2]) if len(parts) == 3 else DEFAULT_RADIUS
            return build_graph("rgg", int(parts[1]), radius, seed)
        if len(parts) == 2:
            return build_graph(parts[0], int(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"cannot parse generator spec {text!r} (try 'path:5' or 'rgg:50:0.17')")


def resolve_graph(args: argparse.Namespace) -> Graph:
    if args.graph is not None:
        return load_graph(args.graph)
    return parse_generator_spec(args.gen, args.seed)


def parse_initial(text: str, m: int, delta: int) -> ActionProfile:
    if text.startswith("all-at:"):
        try:
            node = int(text[len("all-at:"):])
        except ValueError:
            raise UsageError(f"cannot parse initial condition {text!r}") from None
        return ActionProfile((node,) * m, delta)
    profile = parse_profile(text, delta)
    if profile.m != m:
        raise UsageError(f"initial profile lists {profile.m} agents but --agents is {m}")
    return profile


def parse_window(text: str | None, steps: int) -> tuple[int, int]:
    """``LO:HI`` inclusive; the default is the last quarter of the run."""
    if text is None:
        return steps - steps // 4, steps
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"cannot parse window {text!r}; expected LO:HI") from None
    if not 0 <= lo <= hi <= steps:
        raise UsageError(f"window {lo}:{hi} is not inside [0, {steps}]")
    return lo, hi


def optimum_coverage(g: Graph, m: int, delta: int) -> int:
    try:
        return brute_force_max_coverage(g, m, delta)[0]
    except BudgetExceeded:
        return max_coverage_milp(g, m, delta)[0]


def print_summary(stats: OccupancyStats, window: tuple[int, int], optimum: int) -> None:
    print(f"window {window[0]}:{window[1]} ({stats.ticks} ticks)")
    print(f"mean_coverage {stats.mean!r}")
    print(f"optimum {optimum}")
    print(f"fraction_at_optimum {stats.fraction_at_target!r}")


# -- run ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    algorithm: str
    graph: Graph
    initial: ActionProfile
    epsilon: float
    r: float
    steps: int
    seed: int
    trace_path: Path


def execute(cfg: RunConfig) -> list[TraceRecord]:
    run = run_cfcm if cfg.algorithm == "cfcm" else run_blll
    trace = run(cfg.graph, cfg.initial, NoiseParams(cfg.epsilon, cfg.r), cfg.steps, cfg.seed)
    write_trace(trace, cfg.trace_path)
    return trace


def replication_path(path: Path, k: int) -> Path:
    return path.with_name(f"{path.stem}-rep{k}{path.suffix}")


def cmd_gen_graph(args: argparse.Namespace) -> int:
    g = build_graph(args.type, args.n, args.radius, args.seed)
    comment = f"{args.type} n={args.n}" + (f" radius={args.radius} seed={args.seed}" if args.type == "rgg" else "")
    if args.out:
        save_graph(g, args.out, comment)
    print(f"nodes {g.node_count}")
    print(f"edges {g.edge_count}")
    if g.edge_count:
        print(f"nu(delta={args.delta}) {nu(g, args.delta)}")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    if args.agents < 1:
        raise UsageError("--agents must be at least 1")
    if args.replications < 1:
        raise UsageError("--replications must be at least 1")
    g = resolve_graph(args)
    initial = parse_initial(args.initial, args.agents, args.delta)
    initial.validate(g)
    window = parse_window(args.window, args.steps)
    NoiseParams(args.epsilon, args.r)
    optimum = args.optimum if args.optimum is not None else optimum_coverage(g, args.agents, args.delta)

    trace_path = Path(args.trace)
    if args.replications == 1:
        configs = [RunConfig(args.algorithm, g, initial, args.epsilon, args.r, args.steps, args.seed, trace_path)]
    else:
        configs = [
            RunConfig(
                args.algorithm, g, initial, args.epsilon, args.r, args.steps,
                derive_seed(args.seed, f"replication/{k}"), replication_path(trace_path, k),
            )
            for k in range(args.replications)
        ]
    if args.jobs > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            traces = list(pool.map(execute, configs))
    else:
        traces = [execute(c) for c in configs]

    for cfg, trace in zip(configs, traces):
        if len(configs) > 1:
            print(f"trace {cfg.trace_path} seed {cfg.seed}")
        print_summary(occupancy_statistics(trace, window, optimum), window, optimum)
    return 0


def cmd_replicate(args: argparse.Namespace) -> int:
    rep = replicate(args.which, args.seed, args.start)
    out = Path(args.out or f"{args.which}-seed{args.seed}.csv")
    write_trace(rep.trace, out)
    if args.graph_out:
        save_graph(rep.graph, args.graph_out, f"{args.which} seed={args.seed} radius={rep.radius}")
    recipe = RECIPES[args.which]
    print(f"graph nodes {rep.graph.node_count} edges {rep.graph.edge_count} radius {rep.radius}")
    print(f"nu(delta=1) {rep.nu}")
    print(f"start node {rep.start}")
    print(f"trace {out}")
    print_summary(rep.summary, recipe.window, rep.optimum)
    print(f"reported_mean {recipe.reported_mean}")
    return 0


def _graph_traps(g: Graph, m: int, delta: int, optimum: int) -> list[tuple[tuple[int, ...], bool]]:
    """Local maxima below the optimum, each flagged strict or plateau."""
    out = []
    for combo in itertools.combinations_with_replacement(range(g.node_count), m):
        profile = ActionProfile(combo, delta)
        if is_greedy_trap(g, profile, optimum, strict=False):
            out.append((combo, is_greedy_trap(g, profile, optimum, strict=True)))
    return out


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.agents < 1:
        raise UsageError("--agents must be at least 1")
    if args.traps:
        trap = find_greedy_trap(args.max_nodes, args.agents, args.delta, not args.weak, args.family)
        if trap is None:
            print(f"no greedy trap in the catalog up to {args.max_nodes} nodes")
            return 0
        print(f"trap {trap.name} ({'plateau' if args.weak else 'strict'})")
        print(f"profile {','.join(map(str, trap.profile.positions))}")
        print(f"coverage {trap.coverage} optimum {trap.optimum} nu {trap.nu}")
        return 0
    if args.graph is None and args.gen is None:
        raise UsageError("analyze needs --graph, --gen or --traps")
    g = resolve_graph(args)
    best, maximizers = brute_force_max_coverage(g, args.agents, args.delta)
    print(f"max_coverage {best}")
    print(f"maximizers {len(maximizers)}")
    if g.edge_count:
        print(f"nu(delta={args.delta}) {nu(g, args.delta)}")
    traps = _graph_traps(g, args.agents, args.delta, best)
    print(f"greedy_traps {len(traps)}")
    for combo, strict in traps:
        cov = potential(g, ActionProfile(combo, args.delta))
        print(f"  {','.join(map(str, combo))} coverage {cov} {'strict' if strict else 'plateau'}")
    return 0


# -- parser ------------------------------------------------------------------------


def _add_graph_source(p: argparse.ArgumentParser, required: bool) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--graph", help="edge-list file")
    src.add_argument("--gen", help="generator spec, e.g. path:5 or rgg:50:0.17")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-graph", help="generate a graph and write it as an edge list")
    p.add_argument("--type", required=True, choices=GENERATORS)
    p.add_argument("--n", type=int, required=True, help="node count")
    p.add_argument("--radius", type=float, default=DEFAULT_RADIUS, help="rgg connection radius")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=int, default=1, help="range used for the reported nu")
    p.add_argument("--out", help="edge-list path (omit to print statistics only)")
    p.set_defaults(func=cmd_gen_graph)

    p = sub.add_parser("run", help="simulate CFCM or BLLL and write a CSV trace")
    p.add_argument("--algorithm", required=True, choices=("cfcm", "blll"))
    _add_graph_source(p, required=True)
    p.add_argument("--agents", type=int, required=True)
    p.add_argument("--initial", default="all-at:0", help="'1,3' or 'all-at:NODE'")
    p.add_argument("--delta", type=int, default=1)
    p.add_argument("--epsilon", type=float, default=0.015)
    p.add_argument("--r", type=float, default=1.5)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", required=True, help="CSV output path")
    p.add_argument("--window", help="summary window LO:HI, inclusive (default: last quarter)")
    p.add_argument("--optimum", type=int, help="coverage optimum (default: computed)")
    p.add_argument("--replications", type=int, default=1, help="independent runs with derived seeds")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for replications")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("replicate", help="run a 13-agent, 50-node recipe")
    p.add_argument("which", choices=sorted(RECIPES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start", type=int, help="common start node (default: a central node)")
    p.add_argument("--out", help="CSV trace path")
    p.add_argument("--graph-out", help="also save the generated graph here")
    p.set_defaults(func=cmd_replicate)

    p = sub.add_parser("analyze", help="coverage optimum, nu and greedy traps")
    _add_graph_source(p, required=False)
    p.add_argument("--agents", type=int, required=True)
    p.add_argument("--delta", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="seed for rgg generator specs")
    p.add_argument("--traps", action="store_true", help="search the built-in trap catalog instead")
    p.add_argument("--max-nodes", type=int, default=8, help="catalog size limit for --traps")
    p.add_argument("--family", help="restrict --traps to one catalog family, e.g. double_star")
    p.add_argument("--weak", action="store_true", help="accept plateau local maxima in --traps")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"graphcover: error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"graphcover: error: {exc}; try a smaller graph or fewer agents", file=sys.stderr)
        return 2
    except (GraphError, GenerationError, ConfigurationError, OSError, ValueError, RuntimeError) as exc:
        print(f"graphcover: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
