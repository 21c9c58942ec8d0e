"""Resistance calculus for the communication-free dynamics, plus oracles.

Transitions between global states are classified agent by agent (stay,
start, walk, settle on the first or second candidate), which gives the
denied estimated utility, the resistance ``r * starts + sum(denied)`` and the
exact one-tick transition probability.  Exhaustive and integer-programming
coverage optima and a small greedy-trap search live here as well.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .blll import NoiseParams, logit
from .cfcm import AgentState, GlobalState, experiment_path, is_experiment_path
from .game import ActionProfile, constrained_actions, potential
from .graph import Graph, double_star, is_connected, nu, path_graph, star_graph
from .trace import TraceRecord

__all__ = [
    "InfeasibleTransition",
    "BudgetExceeded",
    "TransitionPartition",
    "sensed_samples",
    "classify_agents",
    "denied_utility",
    "transition_resistance",
    "transition_probability",
    "feasible_successors",
    "is_recurrent",
    "unilateral_path_resistance",
    "unilateral_closed_form",
    "brute_force_max_coverage",
    "max_coverage_milp",
    "OccupancyStats",
    "occupancy_statistics",
    "GreedyTrap",
    "is_greedy_trap",
    "trap_catalog",
    "find_greedy_trap",
    "resistance_scaling",
]

ENUMERATION_BUDGET = 10**7


class InfeasibleTransition(ValueError):
    """No single tick of the dynamics maps the first state to the second."""

    def __init__(self, agent: int, reason: str):
        super().__init__(f"agent {agent}: {reason}")
        self.agent = agent


class BudgetExceeded(ValueError):
    """An exhaustive enumeration would exceed its size budget."""


@dataclass(frozen=True)
class TransitionPartition:
    ss: frozenset[int]
    se: frozenset[int]
    ee: frozenset[int]
    es1: frozenset[int]
    es2: frozenset[int]

    @property
    def es(self) -> frozenset[int]:
        return self.es1 | self.es2


def sensed_samples(x: GlobalState, g: Graph) -> tuple[int, ...]:
    """Partial utility each agent senses at its own node in state ``x``."""
    pos = x.positions
    out = []
    for i, a in enumerate(pos):
        reach = g.neighborhood(a, x.delta)
        out.append(0 if any(b in reach for j, b in enumerate(pos) if j != i) else 1)
    return tuple(out)


def _sampled_estimates(xi: AgentState, sample: int, g: Graph, delta: int) -> tuple[int, int]:
    """Estimates after the current tick's sensing, before any settling."""
    e1, e2 = xi.est1, xi.est2
    if not xi.is_stationary and xi.at_last_visit:
        here = xi.position
        if here in g.neighborhood(xi.first, delta):
            e1 += sample
        if here in g.neighborhood(xi.last, delta):
            e2 += sample
    return e1, e2


def _agent_kind(
    i: int, xi: AgentState, xn: AgentState, sample: int, g: Graph, delta: int
) -> str:
    if xi.is_stationary:
        a1 = xi.position
        if xn.is_stationary:
            if xn != xi:
                raise InfeasibleTransition(i, f"stationary agent jumped from {a1} to {xn.position}")
            return "ss"
        if xn.index != 1 or xn.est1 or xn.est2:
            raise InfeasibleTransition(i, "a new walk must start at index 1 with zero estimates")
        if xn.first != a1 or xn.last not in constrained_actions(g, a1):
            raise InfeasibleTransition(i, "walk does not run from the current node to a neighbor")
        if not is_experiment_path(g, xn.sequence, a1, xn.last, delta):
            raise InfeasibleTransition(i, "sequence is not an experiment path")
        return "se"
    e1, e2 = _sampled_estimates(xi, sample, g, delta)
    if xi.index < len(xi.sequence):
        expect = AgentState(xi.sequence, xi.index + 1, e1, e2)
        if xn != expect:
            raise InfeasibleTransition(i, f"walking agent should move to {expect}, got {xn}")
        return "ee"
    if not xn.is_stationary or xn.position not in (xi.first, xi.last):
        raise InfeasibleTransition(i, "finished walker must settle on one of its candidates")
    return "es1" if xn.position == xi.first else "es2"


def _kinds(x: GlobalState, x_next: GlobalState, g: Graph) -> list[str]:
    if len(x.agents) != len(x_next.agents):
        raise InfeasibleTransition(-1, "agent count changed")
    if x.delta != x_next.delta:
        raise InfeasibleTransition(-1, "sensing range changed")
    samples = sensed_samples(x, g)
    return [
        _agent_kind(i, xi, xn, s, g, x.delta)
        for i, (xi, xn, s) in enumerate(zip(x.agents, x_next.agents, samples))
    ]


def classify_agents(x: GlobalState, x_next: GlobalState, g: Graph) -> TransitionPartition:
    """Partition the agents by how their states change from ``x`` to ``x_next``."""
    groups: dict[str, set[int]] = {k: set() for k in ("ss", "se", "ee", "es1", "es2")}
    for i, kind in enumerate(_kinds(x, x_next, g)):
        groups[kind].add(i)
    return TransitionPartition(**{k: frozenset(v) for k, v in groups.items()})


def denied_utility(
    xi: AgentState, xi_next: AgentState, final_sample: int = 0, delta: int = 1
) -> int:
    """Estimated utility given up by a finishing walker; 0 for everyone else.

    ``final_sample`` is the partial utility sensed on the walk's last node in
    the tick the walker settles; it counts toward both estimates when the two
    candidates are within ``delta`` of each other.
    """
    if xi.is_stationary or xi.index < len(xi.sequence):
        return 0
    a1, a2 = xi.first, xi.last
    if not xi_next.is_stationary or xi_next.position not in (a1, a2):
        raise InfeasibleTransition(-1, "finished walker must settle on one of its candidates")
    if a1 == a2:
        return 0
    e1 = xi.est1 + (final_sample if delta >= 1 else 0)
    e2 = xi.est2 + final_sample
    best = max(e1, e2)
    return best - (e1 if xi_next.position == a1 else e2)


def _denied(x: GlobalState, x_next: GlobalState, g: Graph, kinds: Sequence[str]) -> list[int]:
    samples = sensed_samples(x, g)
    return [
        denied_utility(xi, xn, s, x.delta) if k in ("es1", "es2") else 0
        for xi, xn, s, k in zip(x.agents, x_next.agents, samples, kinds)
    ]


def transition_resistance(x: GlobalState, x_next: GlobalState, r: float, g: Graph) -> float:
    """``r`` per agent starting a walk plus the total denied estimate."""
    kinds = _kinds(x, x_next, g)
    return r * kinds.count("se") + sum(_denied(x, x_next, g, kinds))


def _self_loop_fraction(g: Graph, a1: int, delta: int) -> float:
    """Share of candidate draws whose experiment path is just ``[a1]``."""
    options = constrained_actions(g, a1)
    trivial = sum(1 for c in options if len(experiment_path(g, a1, c, delta)) == 1)
    return trivial / len(options)


def transition_probability(
    x: GlobalState, x_next: GlobalState, params: NoiseParams, g: Graph
) -> float:
    """Exact probability of moving from ``x`` to ``x_next`` in one tick.

    A started walk that differs from the deterministic experiment path has
    probability 0.
    """
    kinds = _kinds(x, x_next, g)
    samples = sensed_samples(x, g)
    eps = params.epsilon
    start = params.start_probability
    prob = 1.0
    for xi, xn, s, kind in zip(x.agents, x_next.agents, samples, kinds):
        if kind == "ss":
            # A draw whose walk degenerates to the current node also stays put.
            prob *= (1.0 - start) + start * _self_loop_fraction(g, xi.position, x.delta)
        elif kind == "se":
            a1 = xi.position
            if xn.sequence != experiment_path(g, a1, xn.last, x.delta):
                return 0.0
            prob *= start / len(constrained_actions(g, a1))
        elif kind in ("es1", "es2"):
            if xi.first == xi.last:
                continue
            e1, e2 = _sampled_estimates(xi, s, g, x.delta)
            p2 = logit(e2 - e1, eps)
            prob *= p2 if kind == "es2" else 1.0 - p2
    return prob


def feasible_successors(x: GlobalState, g: Graph) -> list[GlobalState]:
    """Every state reachable from ``x`` in one tick with the built-in walks."""
    samples = sensed_samples(x, g)
    options: list[list[AgentState]] = []
    for xi, s in zip(x.agents, samples):
        if xi.is_stationary:
            a1 = xi.position
            opts = [xi]
            for c in constrained_actions(g, a1):
                walk = experiment_path(g, a1, c, x.delta)
                if len(walk) > 1:
                    opts.append(AgentState(walk))
        elif xi.index < len(xi.sequence):
            e1, e2 = _sampled_estimates(xi, s, g, x.delta)
            opts = [AgentState(xi.sequence, xi.index + 1, e1, e2)]
        else:
            opts = [AgentState.stationary(v) for v in dict.fromkeys((xi.first, xi.last))]
        options.append(opts)
    return [GlobalState(tuple(c), x.delta, x.step + 1) for c in itertools.product(*options)]


def is_recurrent(x: GlobalState) -> bool:
    """All agents stationary: the recurrent class of the noise-free chain."""
    return x.all_stationary


def _check_unilateral(states: Sequence[GlobalState], g: Graph) -> int:
    if len(states) < 2:
        raise ValueError("a path needs at least two states")
    if not (is_recurrent(states[0]) and is_recurrent(states[-1])):
        raise ValueError("path must start and end in all-stationary states")
    if any(is_recurrent(s) for s in states[1:-1]):
        raise ValueError("interior states must contain a walking agent")
    walker = -1
    for p, (a, b) in enumerate(zip(states, states[1:])):
        part = classify_agents(a, b, g)
        if len(part.se) != (1 if p == 0 else 0):
            raise ValueError(f"transition {p} starts {len(part.se)} walks")
        if p == 0:
            (walker,) = part.se
    walking = [i for s in states[1:-1] for i, a in enumerate(s.agents) if not a.is_stationary]
    if any(i != walker for i in walking):
        raise ValueError("more than one agent walks along the path")
    return walker


def unilateral_path_resistance(states: Sequence[GlobalState], r: float, g: Graph) -> float:
    """Summed resistance along a single-experimenter path between recurrent states."""
    _check_unilateral(states, g)
    return sum(transition_resistance(a, b, r, g) for a, b in zip(states, states[1:]))


def unilateral_closed_form(states: Sequence[GlobalState], r: float, g: Graph) -> float:
    """``r + max(phi(first), phi(last)) - phi(last)`` for a single-experimenter path."""
    _check_unilateral(states, g)
    first = potential(g, states[0].profile)
    last = potential(g, states[-1].profile)
    return r + max(first, last) - last


# -- coverage optima -----------------------------------------------------------


def _masks(g: Graph, delta: int) -> list[int]:
    return [sum(1 << v for v in g.neighborhood(u, delta)) for u in g.nodes()]


def brute_force_max_coverage(
    g: Graph, m: int, delta: int, budget: int = ENUMERATION_BUDGET
) -> tuple[int, list[tuple[int, ...]]]:
    """Exact optimum over all placements, agents treated as interchangeable.

    Maximizers are listed as sorted position tuples.
    """
    n = g.node_count
    if m < 1:
        raise ValueError("need at least one agent")
    if n**m > budget:
        raise BudgetExceeded(f"{n}^{m} = {n**m} profiles exceeds the budget of {budget}")
    masks = _masks(g, delta)
    best, argbest = -1, []
    for combo in itertools.combinations_with_replacement(range(n), m):
        cov = 0
        for v in combo:
            cov |= masks[v]
        c = cov.bit_count()
        if c > best:
            best, argbest = c, [combo]
        elif c == best:
            argbest.append(combo)
    return best, argbest


def max_coverage_milp(g: Graph, m: int, delta: int) -> tuple[int, tuple[int, ...]]:
    """Maximum coverage by integer programming; returns the optimum and a placement."""
    n = g.node_count
    c = np.concatenate([np.zeros(n), -np.ones(n)])
    a = np.zeros((n + 1, 2 * n))
    for u in g.nodes():
        a[u, n + u] = 1.0
        for v in g.neighborhood(u, delta):
            a[u, v] -= 1.0
    a[n, :n] = 1.0
    upper = np.concatenate([np.zeros(n), [m]])
    res = milp(
        c,
        constraints=LinearConstraint(a, -np.inf, upper),
        integrality=np.concatenate([np.ones(n), np.zeros(n)]),
        bounds=Bounds(0, 1),
    )
    if not res.success:
        raise RuntimeError(f"integer program failed: {res.message}")
    chosen = [v for v in range(n) if res.x[v] > 0.5]
    placement = tuple(chosen + [chosen[-1] if chosen else 0] * (m - len(chosen)))
    return int(round(-res.fun)), placement


# -- occupancy -----------------------------------------------------------------


@dataclass(frozen=True)
class OccupancyStats:
    mean: float
    fraction_at_target: float
    ticks: int


def occupancy_statistics(
    trace: Sequence[TraceRecord], window: tuple[int, int], target: int
) -> OccupancyStats:
    """Mean coverage and share of ticks at ``target`` for ticks in ``window``.

    The window is inclusive at both ends.
    """
    lo, hi = window
    covered = [rec.covered for rec in trace if lo <= rec.tick <= hi]
    if not covered:
        raise ValueError(f"no trace records in window [{lo}, {hi}]")
    arr = np.asarray(covered, dtype=np.int64)
    return OccupancyStats(float(arr.mean()), float(np.mean(arr == target)), len(covered))


# -- greedy traps -----------------------------------------------------------------


@dataclass(frozen=True)
class GreedyTrap:
    name: str
    graph: Graph
    profile: ActionProfile
    coverage: int
    optimum: int
    nu: int


def is_greedy_trap(
    g: Graph, profile: ActionProfile, optimum: int | None = None, strict: bool = True
) -> bool:
    """Suboptimal coverage that no single-agent move improves.

    With ``strict`` every move to another node must lose coverage; otherwise
    moves that keep coverage level are allowed (a plateau local maximum).
    """
    here = potential(g, profile)
    if optimum is None:
        optimum = brute_force_max_coverage(g, profile.m, profile.delta)[0]
    if here >= optimum:
        return False
    limit = here - 1 if strict else here
    for i, a in enumerate(profile.positions):
        for v in g.neighbors(a):
            moved = profile.positions[:i] + (v,) + profile.positions[i + 1:]
            if potential(g, ActionProfile(moved, profile.delta)) > limit:
                return False
    return True


def _path_with_pendants(length: int, at: Iterable[int]) -> Graph:
    base = path_graph(length)
    edges = list(base.edges)
    nxt = length
    for v in at:
        edges.append((v, nxt))
        nxt += 1
    return Graph(nxt, edges)


def _theta_with_pendant(lengths: tuple[int, int, int], at: int) -> Graph:
    """Poles 0 and 1 joined by three paths with ``lengths`` internal nodes; one leaf on ``at``."""
    edges = []
    nxt = 2
    for count in lengths:
        prev = 0
        for _ in range(count):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    edges.append((at, nxt))
    return Graph(nxt + 1, edges)


def trap_catalog(max_nodes: int, family: str | None = None) -> list[tuple[str, Graph]]:
    """Paths, stars, double stars, paths carrying pendant leaves, and theta
    graphs (two poles joined by three paths) carrying one pendant leaf.

    ``family`` keeps only entries whose name starts with it, e.g. ``"double_star"``.
    """
    out: list[tuple[str, Graph]] = []
    for n in range(2, max_nodes + 1):
        out.append((f"path({n})", path_graph(n)))
        out.append((f"star({n - 1})", star_graph(n - 1)))
    for left in range(1, max_nodes - 1):
        for right in range(0, left + 1):
            if left + right + 2 <= max_nodes:
                out.append((f"double_star({left},{right})", double_star(left, right)))
    for length in range(3, max_nodes):
        for k in range(1, min(length, max_nodes - length) + 1):
            for at in itertools.combinations(range(1, length - 1), k):
                if at:
                    out.append((f"path({length})+pendants{list(at)}", _path_with_pendants(length, at)))
            for at in itertools.combinations_with_replacement(range(1, length - 1), k):
                if len(set(at)) < len(at):
                    out.append((f"path({length})+pendants{list(at)}", _path_with_pendants(length, at)))
    for p in range(1, max_nodes):
        for q in range(p, max_nodes):
            for s in range(q, max_nodes):
                base = 2 + p + q + s
                if base + 1 > max_nodes:
                    continue
                for at in range(base):
                    out.append((f"theta({p},{q},{s})+pendant[{at}]", _theta_with_pendant((p, q, s), at)))
    if family is not None:
        out = [(name, g) for name, g in out if name.startswith(family)]
    return out


def find_greedy_trap(
    max_nodes: int, m: int, delta: int, strict: bool = True, family: str | None = None
) -> GreedyTrap | None:
    """Smallest-nu catalog instance holding a suboptimal local maximum.

    ``strict`` and ``family`` are passed on to :func:`is_greedy_trap` and
    :func:`trap_catalog`.

    Ties on ``nu`` go to fewer nodes, then catalog order, then the
    lexicographically first placement.  Returns ``None`` when the catalog
    holds no trap.
    """
    if max_nodes > 10 or m > 3:
        raise BudgetExceeded("trap search is limited to 10 nodes and 3 agents")
    candidates = []
    for order, (name, g) in enumerate(trap_catalog(max_nodes, family)):
        if g.edge_count == 0 or not is_connected(g):
            continue
        candidates.append((nu(g, delta), g.node_count, order, name, g))
    candidates.sort(key=lambda c: c[:3])
    for gnu, _, _, name, g in candidates:
        optimum = brute_force_max_coverage(g, m, delta)[0]
        for combo in itertools.combinations_with_replacement(range(g.node_count), m):
            profile = ActionProfile(combo, delta)
            if is_greedy_trap(g, profile, optimum, strict):
                return GreedyTrap(name, g, profile, potential(g, profile), optimum, gnu)
    return None


def resistance_scaling(
    x: GlobalState, x_next: GlobalState, r: float, g: Graph, epsilons: Sequence[float]
) -> list[float]:
    """``P_eps(x, x_next) / eps**R`` at each ``eps``; a finite nonzero limit shows up as a plateau."""
    res = transition_resistance(x, x_next, r, g)
    return [
        transition_probability(x, x_next, NoiseParams(eps, r), g) / math.exp(res * math.log(eps))
        for eps in epsilons
    ]
