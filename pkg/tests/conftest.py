import random

import pytest

from graphcover.cfcm import AgentState, GlobalState, experiment_path, initial_state
from graphcover.game import ActionProfile
from graphcover.graph import Graph
from graphcover.stability import feasible_successors


def random_connected_graph(rng: random.Random, n: int, extra: float = 0.2) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``extra``."""
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra:
                edges.add((u, v))
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, [(perm[u], perm[v]) for u, v in edges])


def unilateral_states(
    g: Graph, profile: ActionProfile, i: int, a2: int, settle_on: int
) -> list[GlobalState]:
    """States of one complete experiment by agent ``i`` while the rest stay put."""
    x = initial_state(profile)
    agents = list(x.agents)
    agents[i] = AgentState(experiment_path(g, profile[i], a2, profile.delta))
    states = [x, GlobalState(tuple(agents), profile.delta)]
    while states[-1].agents[i].index < len(states[-1].agents[i].sequence):
        x = states[-1]
        (nxt,) = [
            y for y in feasible_successors(x, g)
            if all(b == a for j, (a, b) in enumerate(zip(x.agents, y.agents)) if j != i)
        ]
        states.append(nxt)
    agents = list(states[-1].agents)
    agents[i] = AgentState.stationary(settle_on)
    states.append(GlobalState(tuple(agents), profile.delta))
    return states


class ScriptedRng:
    """Stand-in for ``random.Random`` that replays fixed draws."""

    def __init__(self, randoms=(), randranges=()):
        self.randoms = list(randoms)
        self.randranges = list(randranges)

    def random(self) -> float:
        return self.randoms.pop(0)

    def randrange(self, n: int) -> int:
        k = self.randranges.pop(0)
        assert 0 <= k < n
        return k


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    lines = request.config.stash.setdefault(_KEY, {})

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines[number] = line
        print(line)

    return record


_KEY = pytest.StashKey[dict]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_KEY, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
