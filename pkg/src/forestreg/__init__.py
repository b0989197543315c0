"""Regularity of powers of edge ideals of weighted oriented forests."""

from .digraph import (
    PerfectMatching,
    ValidationReport,
    WeightedOrientedGraph,
    check_cm_hypothesis,
    find_leaf_perfect_matching,
    induced_subgraph,
    is_forest,
    parse_digraph,
    pick_pendant_matched_edge,
)
from .monomial import (
    Monomial,
    MonomialIdeal,
    VariableRegistry,
    edge_ideal,
    minimalize,
    polarize,
)
from .resolution import (
    BettiTable,
    betti_table,
    regularity,
    regularity_power,
)
from .theta import (
    PiecewiseLinearFunction,
    theta,
    theta_piecewise,
    theta_symmetric,
    theta_tree_dp,
)

__version__ = "0.1.0"

__all__ = [
    "PerfectMatching",
    "ValidationReport",
    "WeightedOrientedGraph",
    "check_cm_hypothesis",
    "find_leaf_perfect_matching",
    "induced_subgraph",
    "is_forest",
    "parse_digraph",
    "pick_pendant_matched_edge",
    "Monomial",
    "MonomialIdeal",
    "VariableRegistry",
    "edge_ideal",
    "minimalize",
    "polarize",
    "BettiTable",
    "betti_table",
    "regularity",
    "regularity_power",
    "PiecewiseLinearFunction",
    "theta",
    "theta_piecewise",
    "theta_symmetric",
    "theta_tree_dp",
    "__version__",
]
