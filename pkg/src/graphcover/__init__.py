"""Multi-agent graph coverage: the coverage game, binary log-linear learning,
communication-free coverage maximization, and stochastic-stability tools."""

from .blll import NoiseParams, run_blll
from .cfcm import GlobalState, experiment_path, run_cfcm
from .game import ActionProfile, covered_set, partial_utility, potential, utility
from .graph import Graph, GraphError, generate_random_geometric, load_graph, nu, save_graph
from .stability import brute_force_max_coverage, find_greedy_trap, transition_probability, transition_resistance
from .trace import TraceRecord, read_trace, write_trace

__version__ = "0.1.0"

__all__ = [
    "ActionProfile",
    "GlobalState",
    "Graph",
    "GraphError",
    "NoiseParams",
    "TraceRecord",
    "brute_force_max_coverage",
    "covered_set",
    "experiment_path",
    "find_greedy_trap",
    "generate_random_geometric",
    "load_graph",
    "nu",
    "partial_utility",
    "potential",
    "read_trace",
    "run_blll",
    "run_cfcm",
    "save_graph",
    "transition_probability",
    "transition_resistance",
    "utility",
    "write_trace",
]
