"""
The coverage game on a path
===========================

Two agents with sensing range 1 sit on a five-node path.  Each agent is paid
for the nodes that only it covers, and a unilateral move changes that pay by
exactly the change in total coverage.
"""

from graphcover.game import ActionProfile, covered_set, deviate, partial_utility, potential, utility
from graphcover.graph import path_graph

g = path_graph(5)
profile = ActionProfile((0, 1), delta=1)
print("covered:", sorted(covered_set(g, profile)), "potential:", potential(g, profile))

# %%
# Agent 1 moves from node 1 to node 3.  Its utility and the potential move
# together.
moved = deviate(profile, 1, 3)
print("utility change:", utility(g, 1, moved) - utility(g, 1, profile))
print("potential change:", potential(g, moved) - potential(g, profile))

# %%
# An agent can only sense whether someone else is nearby.  Summing that bit
# over its own neighborhood recovers its utility.
for i, a in enumerate(moved.positions):
    bits = {v: partial_utility(g, i, v, moved) for v in sorted(g.neighborhood(a, 1))}
    print(f"agent {i} at {a}: partial utilities {bits}, utility {utility(g, i, moved)}")
