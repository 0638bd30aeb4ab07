"""Exact graph-regularized SNP selection by s/t minimum cut."""
from .augmented_graph import AugmentedGraph, RegularizationParams, build_augmented_graph
from .maxflow import SOLVERS, MinCut, max_flow_min_cut
from .selection import (
    SelectionResult,
    cut_constant,
    objective_value,
    parametric_sweep,
    select,
)

__all__ = [
    "AugmentedGraph",
    "RegularizationParams",
    "build_augmented_graph",
    "SOLVERS",
    "MinCut",
    "max_flow_min_cut",
    "SelectionResult",
    "cut_constant",
    "objective_value",
    "parametric_sweep",
    "select",
]
