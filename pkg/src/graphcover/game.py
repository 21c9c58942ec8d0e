"""The coverage game: covered sets, potential, utilities and move sets.

Every function here is pure in ``(graph, profile)``.  An agent's utility is
the number of nodes it alone covers, so a unilateral change of utility equals
the change in the number of covered nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, GraphError

__all__ = [
    "ActionProfile",
    "covered_set",
    "potential",
    "utility",
    "partial_utility",
    "constrained_actions",
    "others_covered",
    "deviate",
    "parse_profile",
    "format_profile",
]


@dataclass(frozen=True)
class ActionProfile:
    """Agent positions plus the sensing range they all share.

    Several agents may occupy the same node.
    """

    positions: tuple[int, ...]
    delta: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", tuple(int(p) for p in self.positions))
        if not self.positions:
            raise GraphError("a profile needs at least one agent")
        if self.delta < 0:
            raise GraphError(f"delta must be non-negative, got {self.delta}")

    @property
    def m(self) -> int:
        return len(self.positions)

    def __len__(self) -> int:
        return len(self.positions)

    def __getitem__(self, i: int) -> int:
        return self.positions[i]

    def validate(self, g: Graph) -> None:
        for v in self.positions:
            g.check_node(v)


def _check_agent(profile: ActionProfile, i: int) -> None:
    if not isinstance(i, int) or not 0 <= i < profile.m:
        raise GraphError(f"agent index {i!r} out of range for {profile.m} agents")


def deviate(profile: ActionProfile, i: int, v: int) -> ActionProfile:
    """``(a'_i, a_-i)``: the profile with agent ``i`` moved to ``v``."""
    _check_agent(profile, i)
    pos = list(profile.positions)
    pos[i] = v
    return ActionProfile(tuple(pos), profile.delta)


def covered_set(g: Graph, profile: ActionProfile) -> frozenset[int]:
    profile.validate(g)
    out: set[int] = set()
    for v in profile.positions:
        out |= g.neighborhood(v, profile.delta)
    return frozenset(out)


def potential(g: Graph, profile: ActionProfile) -> int:
    return len(covered_set(g, profile))


def others_covered(g: Graph, i: int, profile: ActionProfile) -> frozenset[int]:
    """Nodes covered by the agents other than ``i``."""
    _check_agent(profile, i)
    profile.validate(g)
    out: set[int] = set()
    for j, v in enumerate(profile.positions):
        if j != i:
            out |= g.neighborhood(v, profile.delta)
    return frozenset(out)


def utility(g: Graph, i: int, profile: ActionProfile) -> int:
    """Number of nodes covered by agent ``i`` and by no other agent."""
    others = others_covered(g, i, profile)
    return len(g.neighborhood(profile.positions[i], profile.delta) - others)


def partial_utility(g: Graph, i: int, v: int, profile: ActionProfile) -> int:
    """1 if no agent other than ``i`` is within ``delta`` of ``v``, else 0."""
    g.check_node(v)
    _check_agent(profile, i)
    profile.validate(g)
    reach = g.neighborhood(v, profile.delta)
    for j, a in enumerate(profile.positions):
        if j != i and a in reach:
            return 0
    return 1


def constrained_actions(g: Graph, v: int) -> tuple[int, ...]:
    """Closed neighborhood of ``v``, ascending: the legal one-step moves."""
    return tuple(sorted((v, *g.neighbors(v))))


def parse_profile(text: str, delta: int = 1) -> ActionProfile:
    """Parse a comma-separated position list such as ``"1,3"``."""
    try:
        positions = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise GraphError(f"cannot parse profile literal {text!r}") from None
    return ActionProfile(positions, delta)


def format_profile(positions: Iterable[int]) -> str:
    return ",".join(str(p) for p in positions)
