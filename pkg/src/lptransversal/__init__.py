"""Exact and constructive transversals of longest paths and cycles in
small graphs, plus the ladder-weaving and circular-arc constructions."""

from ._kernels import backend
from .arcs import Arc, ArcModel, covering_family, parse_arc_model, theorem6_transversal
from .errors import BudgetExceeded, FalsificationAlarm
from .experiment import ExperimentConfig, parse_config, run_experiment
from .graph import Graph, connectivity, parse_graph, read_graph
from .longest import PathCollection, longest_cycles, longest_paths, pairwise_intersection_check
from .separator import TreeDecomposition, balanced_separator, parse_tree_decomposition, separator_transversal
from .transversal import (
    Transversal,
    exact_lct,
    exact_lpt,
    fractional_lpt,
    greedy_alpha_transversal,
    verify_transversal,
)
from .weave import BlockMatching, LadderInstance, koenig_cover, refine_matching, weave

__version__ = "0.1.0"

__all__ = [
    "Arc", "ArcModel", "BlockMatching", "BudgetExceeded", "ExperimentConfig", "FalsificationAlarm",
    "Graph", "LadderInstance", "PathCollection", "Transversal", "TreeDecomposition",
    "backend", "balanced_separator", "connectivity", "covering_family", "exact_lct", "exact_lpt",
    "fractional_lpt", "greedy_alpha_transversal", "koenig_cover", "longest_cycles", "longest_paths",
    "pairwise_intersection_check", "parse_arc_model", "parse_config", "parse_graph",
    "parse_tree_decomposition", "read_graph", "refine_matching", "run_experiment",
    "separator_transversal", "theorem6_transversal", "verify_transversal", "weave",
]
