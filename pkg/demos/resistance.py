"""
Resistances of single transitions
=================================

Each transition of the communication-free chain has a probability that
scales like ``eps ** R``: ``r`` for every walk started plus the estimated
utility a finisher gives up.
"""

from graphcover.blll import NoiseParams
from graphcover.cfcm import AgentState, GlobalState, experiment_path
from graphcover.graph import path_graph
from graphcover.stability import (
    classify_agents,
    resistance_scaling,
    transition_probability,
    transition_resistance,
)

g = path_graph(5)
finisher = AgentState(experiment_path(g, 1, 2, 1), index=6, est1=2, est2=1)
x = GlobalState((AgentState.stationary(3), finisher), 1)
# agent 0 starts a walk toward 2; agent 1 settles on its worse estimate
y = GlobalState((AgentState(experiment_path(g, 3, 2, 1)), AgentState.stationary(2)), 1)

print(classify_agents(x, y, g))
print("resistance:", transition_resistance(x, y, 1.5, g))
for eps in (1e-2, 1e-3, 1e-4):
    print(f"eps {eps:g}: probability {transition_probability(x, y, NoiseParams(eps, 1.5), g):.3e}")

# %%
# Dividing out ``eps ** R`` leaves a ratio that settles to a constant.
print("P / eps^R:", resistance_scaling(x, y, 1.5, g, [1e-2, 1e-3, 1e-4]))
