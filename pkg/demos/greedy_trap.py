"""
Escaping a greedy trap
======================

Greedy play can freeze in a placement where every single move loses
coverage although a better placement exists.  Noisy experimentation with an
experiment cost ``r`` above ``nu(G)`` walks out of it.
"""

import random

from graphcover.blll import BlllState, NoiseParams, best_response_step
from graphcover.cfcm import iter_cfcm
from graphcover.stability import find_greedy_trap

trap = find_greedy_trap(8, 2, 1)
print(trap.name, "edges", trap.graph.edges)
print(f"trap {trap.profile.positions}: coverage {trap.coverage} of {trap.optimum}, nu {trap.nu}")

# %%
# Best response never leaves.
state = BlllState(trap.profile)
rng = random.Random(0)
for _ in range(10_000):
    state = best_response_step(state, trap.graph, rng)
print("after 10000 best responses:", state.profile.positions)

# %%
# The communication-free dynamics finds the optimum.
params = NoiseParams(0.05, trap.nu + 0.05)
for seed in range(5):
    for x, covered in iter_cfcm(trap.graph, trap.profile, params, 100_000, seed):
        if covered == trap.optimum and x.all_stationary:
            print(f"seed {seed}: optimum {x.positions} reached at tick {x.step}")
            break
