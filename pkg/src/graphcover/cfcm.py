"""Communication-free coverage maximization.

Each agent is either stationary or walking an experiment path between its
current node ``a1`` and a neighbor ``a2``.  While walking it senses, at each
node's last visit on the walk, whether any other agent is within range, and
adds that bit to the estimate of every candidate whose neighborhood holds the
node.  At the end of the walk it settles on ``a1`` or ``a2`` with log-linear
odds in the two estimates.

Agents never see another agent's position or utility; everything they use
arrives through a :class:`LocalView`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .blll import ConfigurationError, NoiseParams, logit
from .game import ActionProfile, constrained_actions
from .graph import Graph, GraphError, induced_subgraph, is_connected
from .trace import TraceRecord, make_rng

__all__ = [
    "AgentState",
    "GlobalState",
    "LocalView",
    "local_view",
    "experiment_path",
    "is_experiment_path",
    "settle_probability",
    "cfcm_agent_step",
    "cfcm_step",
    "initial_state",
    "iter_cfcm",
    "run_cfcm",
]


@dataclass(frozen=True)
class AgentState:
    """Walk ``sequence``, 1-based ``index`` into it, and the two estimates.

    A singleton sequence means the agent is stationary.
    """

    sequence: tuple[int, ...]
    index: int = 1
    est1: int = 0
    est2: int = 0

    def __post_init__(self) -> None:
        if not self.sequence:
            raise GraphError("agent sequence must be non-empty")
        if not 1 <= self.index <= len(self.sequence):
            raise GraphError(f"index {self.index} outside [1, {len(self.sequence)}]")
        if len(self.sequence) == 1 and (self.est1 or self.est2):
            raise GraphError("a stationary agent carries no estimates")

    @classmethod
    def stationary(cls, node: int) -> "AgentState":
        return cls((node,))

    @property
    def is_stationary(self) -> bool:
        return len(self.sequence) == 1

    @property
    def position(self) -> int:
        return self.sequence[self.index - 1]

    @property
    def first(self) -> int:
        return self.sequence[0]

    @property
    def last(self) -> int:
        return self.sequence[-1]

    @property
    def at_last_visit(self) -> bool:
        """True when the current node does not recur later on the walk."""
        return self.position not in self.sequence[self.index:]


@dataclass(frozen=True)
class GlobalState:
    """All agent states, the shared sensing range, and the tick counter."""

    agents: tuple[AgentState, ...]
    delta: int = 1
    step: int = 0

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(a.position for a in self.agents)

    @property
    def all_stationary(self) -> bool:
        return all(a.is_stationary for a in self.agents)

    @property
    def profile(self) -> ActionProfile:
        return ActionProfile(self.positions, self.delta)


def initial_state(profile: ActionProfile) -> GlobalState:
    return GlobalState(tuple(AgentState.stationary(v) for v in profile.positions), profile.delta)


@dataclass(frozen=True, eq=False)
class LocalView:
    """What an agent at ``center`` senses: its neighborhood and company.

    ``occupied_within_delta`` is set when some other agent stands within
    ``delta`` hops of the center.  The sensed subgraph is built on demand.
    """

    center: int
    delta: int
    occupied_within_delta: bool
    graph: Graph

    @cached_property
    def _induced(self) -> tuple[Graph, dict[int, int]]:
        return induced_subgraph(self.graph, self.graph.neighborhood(self.center, self.delta))

    @property
    def visible_nodes(self) -> frozenset[int]:
        return self.graph.neighborhood(self.center, self.delta)

    @property
    def visible_subgraph(self) -> Graph:
        return self._induced[0]

    @property
    def id_map(self) -> dict[int, int]:
        return self._induced[1]

    @property
    def partial_utility(self) -> int:
        return 0 if self.occupied_within_delta else 1


def local_view(g: Graph, profile: ActionProfile, i: int) -> LocalView:
    if not isinstance(i, int) or not 0 <= i < profile.m:
        raise GraphError(f"agent index {i!r} out of range for {profile.m} agents")
    profile.validate(g)
    center = profile[i]
    reach = g.neighborhood(center, profile.delta)
    occupied = any(a in reach for j, a in enumerate(profile.positions) if j != i)
    return LocalView(center, profile.delta, occupied, g)


def experiment_path(g: Graph, a1: int, a2: int, delta: int) -> tuple[int, ...]:
    """Deterministic walk from ``a1`` to ``a2`` through both neighborhoods.

    A breadth-first tree of the union, rooted at ``a1`` with ascending
    neighbor order, is walked depth-first, down and back up each edge.  The
    subtree of ``a2`` is walked last and the walk stops on ``a2`` instead of
    returning to the root, so the length never exceeds
    ``2 * (len(union) - 1) + 1``.
    """
    if a2 not in constrained_actions(g, a1):
        raise GraphError(f"{a2} is not in the closed neighborhood of {a1}")
    union = g.neighborhood(a1, delta) | g.neighborhood(a2, delta)
    adj = g.adjacency
    children: dict[int, list[int]] = {a1: []}
    frontier = [a1]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w in union and w not in children:
                    children[w] = []
                    children[u].append(w)
                    nxt.append(w)
        frontier = nxt
    if a2 != a1:
        children[a1].remove(a2)
        children[a1].append(a2)

    walk = [a1]

    def descend(u: int) -> None:
        for c in children[u]:
            walk.append(c)
            descend(c)
            walk.append(u)

    if a2 == a1:
        descend(a1)
    else:
        for c in children[a1][:-1]:
            walk.append(c)
            descend(c)
            walk.append(a1)
        walk.append(a2)
        descend(a2)
    return tuple(walk)


def is_experiment_path(g: Graph, walk: Sequence[int], a1: int, a2: int, delta: int) -> bool:
    """Check the three defining properties of an experiment path."""
    if not walk or walk[0] != a1 or walk[-1] != a2:
        return False
    if any(v not in g.adjacency[u] for u, v in zip(walk, walk[1:])):
        return False
    return (g.neighborhood(a1, delta) | g.neighborhood(a2, delta)) <= set(walk)


def settle_probability(est1: int, est2: int, epsilon: float) -> float:
    """Probability that a finished walker settles on its second candidate."""
    return logit(est2 - est1, epsilon)


def cfcm_agent_step(
    agent: AgentState,
    view: LocalView,
    params: NoiseParams,
    g: Graph,
    rng: random.Random,
) -> AgentState:
    """One tick of one agent, driven only by its own state and what it senses."""
    if view.center != agent.position:
        raise GraphError("view is not centered on the agent's position")
    if agent.is_stationary:
        if rng.random() > params.start_probability:
            return agent
        a1 = agent.position
        options = constrained_actions(g, a1)
        a2 = options[rng.randrange(len(options))]
        return AgentState(experiment_path(g, a1, a2, view.delta))

    seq = agent.sequence
    a1, a2 = seq[0], seq[-1]
    est1, est2 = agent.est1, agent.est2
    if agent.at_last_visit:
        sample = view.partial_utility
        here = agent.position
        if here in g.neighborhood(a1, view.delta):
            est1 += sample
        if here in g.neighborhood(a2, view.delta):
            est2 += sample
    if agent.index == len(seq):
        if rng.random() < settle_probability(est1, est2, params.epsilon):
            return AgentState.stationary(a2)
        return AgentState.stationary(a1)
    return AgentState(seq, agent.index + 1, est1, est2)


def _cover_counts(g: Graph, positions: Sequence[int], delta: int) -> list[int]:
    counts = [0] * g.node_count
    for a in positions:
        for v in g.neighborhood(a, delta):
            counts[v] += 1
    return counts


def _advance(
    state: GlobalState,
    counts: list[int],
    g: Graph,
    params: NoiseParams,
    rng: random.Random,
    views: dict[tuple[int, bool], LocalView],
) -> GlobalState:
    # Every agent covers its own node, so a count above one there means company.
    delta = state.delta
    out = []
    for agent in state.agents:
        c = agent.position
        key = (c, counts[c] > 1)
        view = views.get(key)
        if view is None:
            view = views[key] = LocalView(c, delta, key[1], g)
        out.append(cfcm_agent_step(agent, view, params, g, rng))
    return GlobalState(tuple(out), delta, state.step + 1)


def cfcm_step(
    state: GlobalState, g: Graph, params: NoiseParams, rng: random.Random
) -> GlobalState:
    """Advance every agent by one tick on views sensed at the start of the tick."""
    if not is_connected(g):
        raise ConfigurationError("the dynamics require a connected graph")
    counts = _cover_counts(g, state.positions, state.delta)
    return _advance(state, counts, g, params, rng, {})


def iter_cfcm(
    g: Graph, initial: ActionProfile, params: NoiseParams, steps: int, seed: int
) -> Iterator[tuple[GlobalState, int]]:
    """Yield ``(state, covered)`` for ticks ``0 .. steps``."""
    if steps < 0:
        raise ConfigurationError(f"steps must be non-negative, got {steps}")
    if not is_connected(g):
        raise ConfigurationError("the dynamics require a connected graph")
    initial.validate(g)
    delta = initial.delta
    rng = make_rng(seed, "cfcm")
    views: dict[tuple[int, bool], LocalView] = {}
    n = g.node_count
    state = initial_state(initial)
    for t in range(steps + 1):
        counts = _cover_counts(g, state.positions, delta)
        yield state, n - counts.count(0)
        if t < steps:
            state = _advance(state, counts, g, params, rng, views)


def run_cfcm(
    g: Graph, initial: ActionProfile, params: NoiseParams, steps: int, seed: int
) -> list[TraceRecord]:
    return [
        TraceRecord(state.step, covered, state.positions)
        for state, covered in iter_cfcm(g, initial, params, steps, seed)
    ]
