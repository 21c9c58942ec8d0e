"""
Estimating utilities by walking
===============================

Without communication an agent learns the value of a neighboring node by
walking a route through both neighborhoods and sensing, node by node,
whether another agent is within range.
"""

from graphcover.blll import NoiseParams
from graphcover.cfcm import AgentState, GlobalState, cfcm_step, experiment_path, initial_state
from graphcover.game import ActionProfile, deviate, utility
from graphcover.graph import path_graph

g = path_graph(7)
profile = ActionProfile((1, 5), delta=1)
walk = experiment_path(g, 1, 2, 1)
print("walk from 1 to 2:", walk)

# %%
# Script one experiment: agent 0 walks while agent 1 stays put.  The walker
# adds a sample only on the last visit to each node.
agents = list(initial_state(profile).agents)
agents[0] = AgentState(walk)
x = GlobalState(tuple(agents), 1)


class StayPut:
    """Every draw is 1.0: nobody starts a walk and the walker keeps node 1."""

    def random(self):
        return 1.0


while not x.agents[0].is_stationary:
    a = x.agents[0]
    print(f"tick {x.step}: at {a.position}, estimates ({a.est1}, {a.est2})")
    x = cfcm_step(x, g, NoiseParams(0.1), StayPut())

# The sample on the final node arrives in the settling tick and counts for
# both candidates here, which brings the estimates to (3, 3).
print("true utilities:", utility(g, 0, profile), utility(g, 0, deviate(profile, 0, 2)))
