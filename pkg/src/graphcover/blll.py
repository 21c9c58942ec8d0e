"""Binary log-linear learning over closed-neighborhood move sets.

This is the communication-assisted baseline: the updating agent evaluates its
exact utility and the exact utility of one candidate move, which requires
knowing where the other agents are.  One agent, drawn uniformly, updates per
step.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property

from .game import ActionProfile, constrained_actions, covered_set, deviate, utility
from .graph import Graph, is_connected
from .trace import TraceRecord, make_rng

__all__ = [
    "NoiseParams",
    "BlllState",
    "ConfigurationError",
    "logit",
    "switch_probability",
    "blll_step",
    "run_blll",
    "best_response_step",
]


class ConfigurationError(ValueError):
    """The dynamics were asked to run on an unsupported instance."""


@dataclass(frozen=True)
class NoiseParams:
    """Decision noise ``epsilon`` and the experimentation exponent ``r``.

    ``r`` only matters for the communication-free dynamics.
    """

    epsilon: float
    r: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon < 1.0:
            raise ConfigurationError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not self.r > 0.0:
            raise ConfigurationError(f"r must be positive, got {self.r}")

    @cached_property
    def start_probability(self) -> float:
        """``epsilon ** r``, evaluated in log space."""
        return math.exp(self.r * math.log(self.epsilon))


def logit(exponent: float, epsilon: float) -> float:
    """``1 / (1 + epsilon ** exponent)`` without overflow for any exponent."""
    x = exponent * math.log(epsilon)
    if x >= 0:
        z = math.exp(-x)
        return z / (1.0 + z)
    return 1.0 / (1.0 + math.exp(x))


def switch_probability(u_current: float, u_candidate: float, epsilon: float) -> float:
    """Probability of adopting the candidate.

    Equal to ``beta / (alpha + beta)`` with ``alpha = eps**-u_current`` and
    ``beta = eps**-u_candidate``.
    """
    return logit(u_candidate - u_current, epsilon)


@dataclass(frozen=True)
class BlllState:
    profile: ActionProfile
    step: int = 0


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise ConfigurationError("the dynamics require a connected graph")


def blll_step(
    state: BlllState, g: Graph, params: NoiseParams, rng: random.Random
) -> BlllState:
    _require_connected(g)
    profile = state.profile
    i = rng.randrange(profile.m)
    options = constrained_actions(g, profile[i])
    candidate = options[rng.randrange(len(options))]
    trial = deviate(profile, i, candidate)
    p = switch_probability(utility(g, i, profile), utility(g, i, trial), params.epsilon)
    if rng.random() < p:
        profile = trial
    return BlllState(profile, state.step + 1)


def run_blll(
    g: Graph, initial: ActionProfile, params: NoiseParams, steps: int, seed: int
) -> list[TraceRecord]:
    """Trace of ``steps`` BLLL updates, including the initial record."""
    if steps < 0:
        raise ConfigurationError(f"steps must be non-negative, got {steps}")
    _require_connected(g)
    initial.validate(g)
    rng = make_rng(seed, "blll")
    state = BlllState(initial)
    trace = [TraceRecord(0, len(covered_set(g, initial)), initial.positions)]
    for _ in range(steps):
        state = blll_step(state, g, params, rng)
        p = state.profile
        trace.append(TraceRecord(state.step, len(covered_set(g, p)), p.positions))
    return trace


def best_response_step(state: BlllState, g: Graph, rng: random.Random) -> BlllState:
    """Noise-free greedy update of one uniformly drawn agent.

    The agent moves only if some neighbor strictly raises its utility; among
    the best moves the smallest node id wins.
    """
    profile = state.profile
    i = rng.randrange(profile.m)
    here = utility(g, i, profile)
    best, best_u = profile[i], here
    for v in constrained_actions(g, profile[i]):
        u = utility(g, i, deviate(profile, i, v))
        if u > best_u:
            best, best_u = v, u
    if best != profile[i]:
        profile = deviate(profile, i, best)
    return BlllState(profile, state.step + 1)
