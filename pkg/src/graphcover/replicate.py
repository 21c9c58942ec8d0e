"""Recipes for the 13-agent, 50-node coverage experiments.

The graph is a connected random geometric graph on 50 nodes whose edge count
lies within 10 of 78, whose ``nu`` at range 1 is 4, and on which 13 agents
with range 1 can cover every node.  All agents start together on a
minimum-eccentricity node unless told otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blll import NoiseParams, run_blll
from .cfcm import run_cfcm
from .game import ActionProfile
from .graph import GenerationError, Graph, distances_from, generate_random_geometric, nu
from .stability import OccupancyStats, max_coverage_milp, occupancy_statistics
from .trace import TraceRecord, derive_seed

__all__ = ["RECIPES", "Recipe", "Replication", "central_node", "replication_graph", "replicate"]

NODES = 50
TARGET_EDGES = 78
EDGE_SLACK = 10
TARGET_NU = 4
AGENTS = 13
DELTA = 1
RADII = (0.165, 0.17, 0.175)
MAX_GRAPH_ATTEMPTS = 2000


@dataclass(frozen=True)
class Recipe:
    algorithm: str
    steps: int
    window: tuple[int, int]
    epsilon: float
    r: float
    reported_mean: float


RECIPES = {
    "cfcm-fig5": Recipe("cfcm", 200_000, (150_000, 200_000), 0.015, 1.5, 49.7),
    "blll-fig7": Recipe("blll", 10_000, (7_500, 10_000), 0.015, 1.5, 49.76),
}


@dataclass(frozen=True)
class Replication:
    which: str
    graph: Graph
    radius: float
    start: int
    nu: int
    optimum: int
    trace: list[TraceRecord]
    summary: OccupancyStats


def replication_graph(seed: int) -> tuple[Graph, float]:
    """First accepted graph of a deterministic (radius, substream) schedule."""
    for attempt in range(MAX_GRAPH_ATTEMPTS):
        radius = RADII[attempt % len(RADII)]
        try:
            g = generate_random_geometric(NODES, radius, derive_seed(seed, f"graph/{attempt}"))
        except GenerationError:
            continue
        if abs(g.edge_count - TARGET_EDGES) > EDGE_SLACK or nu(g, DELTA) != TARGET_NU:
            continue
        if max_coverage_milp(g, AGENTS, DELTA)[0] == NODES:
            return g, radius
    raise GenerationError(f"no acceptable graph after {MAX_GRAPH_ATTEMPTS} attempts (seed {seed})")


def central_node(g: Graph) -> int:
    """Lowest-id node of minimum eccentricity."""
    ecc = [max(distances_from(g, v)) for v in g.nodes()]
    return ecc.index(min(ecc))


def replicate(which: str, seed: int, start: int | None = None) -> Replication:
    try:
        recipe = RECIPES[which]
    except KeyError:
        raise ValueError(f"unknown recipe {which!r}; choose from {sorted(RECIPES)}") from None
    g, radius = replication_graph(seed)
    if start is None:
        start = central_node(g)
    g.check_node(start)
    initial = ActionProfile((start,) * AGENTS, DELTA)
    params = NoiseParams(recipe.epsilon, recipe.r)
    run = run_cfcm if recipe.algorithm == "cfcm" else run_blll
    trace = run(g, initial, params, recipe.steps, derive_seed(seed, "sim"))
    summary = occupancy_statistics(trace, recipe.window, NODES)
    return Replication(which, g, radius, start, nu(g, DELTA), NODES, trace, summary)
