"""Concrete state spaces satisfying one shared search-problem contract."""

from parsearch.domains.base import SearchProblem, fold_key, validate_path
from parsearch.domains.graph import ExplicitGraph, missorder_graph, parse_graph
from parsearch.domains.grid import (
    GridMap,
    GridProblem,
    grid_expand,
    octile_h,
    parse_grid,
    random_grid,
)
from parsearch.domains.lattice import LatticeProblem
from parsearch.domains.tiles import (
    TilePuzzle,
    goal_state,
    is_solvable,
    random_scramble,
    random_solvable,
    state_count,
)

__all__ = [
    "SearchProblem",
    "fold_key",
    "validate_path",
    "ExplicitGraph",
    "missorder_graph",
    "parse_graph",
    "GridMap",
    "GridProblem",
    "grid_expand",
    "octile_h",
    "parse_grid",
    "random_grid",
    "LatticeProblem",
    "TilePuzzle",
    "goal_state",
    "is_solvable",
    "random_scramble",
    "random_solvable",
    "state_count",
]
