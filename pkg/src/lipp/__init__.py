"""Exact branch-and-cut for the longest induced path problem."""

from .graph import Graph, TransformedGraph, transform
from .heuristic import HeuristicConfig, PathSolution, ghlipp, verify_induced_path
from .instances import parse_edge_list, read_instance
from .polylab import brute_force_lipp, check_membership, compare_root_bounds
from .separation import Point
from .solver import SolveReport, SolverConfig, solve

__all__ = [
    "Graph",
    "TransformedGraph",
    "transform",
    "HeuristicConfig",
    "PathSolution",
    "ghlipp",
    "verify_induced_path",
    "parse_edge_list",
    "read_instance",
    "brute_force_lipp",
    "check_membership",
    "compare_root_bounds",
    "Point",
    "SolveReport",
    "SolverConfig",
    "solve",
]
