"""Parallel best-first search engines and benchmark tooling.

The library is organized around a small problem contract (`domains`),
reference serial searches (`serial`), pluggable work-distribution hash
strategies (`hashing`), parallel engines with message-passing semantics
(`engine`), distributed termination detection (`termination`), overhead
metrics (`metrics`), and an iterative-allocation cost simulator
(`allocation`).
"""

from parsearch.common import EPS, INF, ConfigError, NodeLimitExceeded, ParseError
from parsearch.domains import (
    ExplicitGraph,
    GridMap,
    GridProblem,
    LatticeProblem,
    TilePuzzle,
)
from parsearch.engine import (
    EngineConfig,
    dovetail,
    hdastar,
    parallel_window,
    spastar,
)
from parsearch.hashing import make_strategy
from parsearch.metrics import efficiency_fraction, overheads
from parsearch.serial import (
    SearchStats,
    Solution,
    astar,
    idastar,
    uniform_cost_oracle,
    wastar,
)

__all__ = [
    "EPS",
    "INF",
    "ConfigError",
    "NodeLimitExceeded",
    "ParseError",
    "ExplicitGraph",
    "GridMap",
    "GridProblem",
    "LatticeProblem",
    "TilePuzzle",
    "EngineConfig",
    "dovetail",
    "hdastar",
    "parallel_window",
    "spastar",
    "make_strategy",
    "efficiency_fraction",
    "overheads",
    "SearchStats",
    "Solution",
    "astar",
    "idastar",
    "uniform_cost_oracle",
    "wastar",
]
