"""
Thirteen agents on a fifty-node geometric graph
===============================================

Both learning rules start with all agents on one central node.  BLLL takes
10000 single-agent updates; the communication-free rule takes 200000 ticks
(pass ``cfcm`` on the command line to run it too, about ten seconds).
"""

import sys

import numpy as np

from graphcover.replicate import RECIPES, replicate

which = ["blll-fig7"] + (["cfcm-fig5"] if "cfcm" in sys.argv[1:] else [])
for name in which:
    rep = replicate(name, seed=1)
    covered = np.array([rec.covered for rec in rep.trace])
    recipe = RECIPES[name]
    print(f"{name}: {rep.graph.edge_count} edges, nu {rep.nu}, start node {rep.start}")
    checkpoints = np.linspace(0, recipe.steps, 6).astype(int)
    print("  coverage at", dict(zip(checkpoints.tolist(), covered[checkpoints].tolist())))
    print(f"  mean over {recipe.window}: {rep.summary.mean:.2f} (reported {recipe.reported_mean})")
