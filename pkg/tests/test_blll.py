import itertools
import random
from collections import Counter

import pytest

from conftest import ScriptedRng
from graphcover.blll import (
    BlllState,
    ConfigurationError,
    NoiseParams,
    best_response_step,
    blll_step,
    logit,
    run_blll,
    switch_probability,
)
from graphcover.game import ActionProfile, potential
from graphcover.graph import Graph, cycle_graph, path_graph


def test_noise_params_validation():
    for eps in (0.0, 1.0, -0.1, 2.0):
        with pytest.raises(ConfigurationError):
            NoiseParams(eps)
    with pytest.raises(ConfigurationError):
        NoiseParams(0.1, 0.0)
    assert NoiseParams(0.01, 1.5).start_probability == pytest.approx(0.001)


def test_switch_probability_values():
    # candidate one better: 1 / (1 + eps)
    assert switch_probability(0, 1, 0.1) == pytest.approx(1 / 1.1)
    assert switch_probability(1, 0, 0.1) == pytest.approx(0.1 / 1.1)
    assert switch_probability(2, 2, 0.3) == 0.5
    a, b = 0.1 ** -3, 0.1 ** -5
    assert switch_probability(3, 5, 0.1) == pytest.approx(b / (a + b))


def test_logit_never_overflows():
    assert logit(1e6, 1e-4) == 1.0
    assert logit(-1e6, 1e-4) == 0.0
    for x in (-50, -1, 0, 1, 50):
        assert logit(x, 0.2) + logit(-x, 0.2) == pytest.approx(1.0)


def test_step_uses_agent_candidate_then_coin():
    g = path_graph(5)
    state = BlllState(ActionProfile((0, 0), 1))
    # agent 1, candidate index 1 of (0, 1) -> node 1, coin 0.0 accepts
    nxt = blll_step(state, g, NoiseParams(0.1), ScriptedRng([0.0], [1, 1]))
    assert nxt.profile.positions == (0, 1) and nxt.step == 1
    # a coin above the switch probability keeps the old profile
    nxt = blll_step(state, g, NoiseParams(0.1), ScriptedRng([0.99], [1, 1]))
    assert nxt.profile.positions == (0, 0)


def test_run_length_and_coverage_column():
    g = path_graph(6)
    trace = run_blll(g, ActionProfile((0, 0), 1), NoiseParams(0.1), 200, seed=3)
    assert [r.tick for r in trace] == list(range(201))
    for rec in trace:
        assert rec.covered == potential(g, ActionProfile(rec.positions, 1))
        assert all(0 <= p < 6 for p in rec.positions)


def test_run_is_deterministic():
    g = cycle_graph(7)
    p = ActionProfile((0, 0, 0), 1)
    assert run_blll(g, p, NoiseParams(0.05), 300, 9) == run_blll(g, p, NoiseParams(0.05), 300, 9)
    assert run_blll(g, p, NoiseParams(0.05), 300, 9) != run_blll(g, p, NoiseParams(0.05), 300, 10)


def test_moves_are_one_hop():
    g = path_graph(8)
    trace = run_blll(g, ActionProfile((0, 7), 1), NoiseParams(0.3), 500, 1)
    for a, b in zip(trace, trace[1:]):
        changed = [i for i in range(2) if a.positions[i] != b.positions[i]]
        assert len(changed) <= 1
        for i in changed:
            assert abs(a.positions[i] - b.positions[i]) == 1


def test_disconnected_graph_rejected():
    g = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(ConfigurationError):
        run_blll(g, ActionProfile((0,), 1), NoiseParams(0.1), 10, 0)
    with pytest.raises(ConfigurationError):
        run_blll(path_graph(3), ActionProfile((0,), 1), NoiseParams(0.1), -1, 0)


def test_gibbs_distribution_on_regular_graph():
    # Equal move-set sizes make the chain reversible with weights eps ** -phi.
    g = cycle_graph(6)
    eps = 0.5
    trace = run_blll(g, ActionProfile((0, 0), 1), NoiseParams(eps), 200_000, seed=2)
    counts = Counter(r.covered for r in trace[1000:])
    total = sum(counts.values())
    weights = Counter()
    for pos in itertools.product(range(6), repeat=2):
        weights[potential(g, ActionProfile(pos, 1))] += eps ** -potential(g, ActionProfile(pos, 1))
    z = sum(weights.values())
    for phi, w in weights.items():
        assert counts[phi] / total == pytest.approx(w / z, abs=0.02)


def test_best_response_moves_only_on_strict_gain():
    g = path_graph(5)
    # agent 1 at 0 duplicates agent 0; moving to 1 gains a node
    state = BlllState(ActionProfile((0, 0), 1))
    nxt = best_response_step(state, g, random.Random(0))
    assert potential(g, nxt.profile) >= 2
    # an optimum is a fixed point
    state = BlllState(ActionProfile((1, 3), 1))
    for seed in range(10):
        assert best_response_step(state, g, random.Random(seed)).profile == state.profile


def test_best_response_smallest_id_tie_break():
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])
    state = BlllState(ActionProfile((1,), 0))
    # every neighbor gives utility 1, same as staying: no move
    assert best_response_step(state, g, random.Random(0)).profile.positions == (1,)
    state = BlllState(ActionProfile((1, 1), 1))
    nxt = best_response_step(state, g, ScriptedRng(randranges=[0]))
    # agent 0 leaves the shared leaf; hub 0 covers everything
    assert nxt.profile.positions == (0, 1)
    assert potential(g, nxt.profile) == 4
