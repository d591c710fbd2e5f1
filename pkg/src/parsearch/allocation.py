"""Iterative-allocation cost simulator for utility computing.

A ravenous solver is re-run with geometrically growing hardware allocation
unit (HAU) counts until it succeeds. Failing iterations last at most E
hours; the first allocation at or above the minimal width succeeds and runs
for the makespan T(v). Costs follow either a continuous model (pay exactly
duration * HAUs) or a discrete model (per-HAU billing in whole hours, with
optional reuse of spare paid-up time across iterations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from parsearch.common import ConfigError

_CEIL_EPS = 1e-9


def _ceil(x: float) -> int:
    return max(1, math.ceil(x - _CEIL_EPS)) if x > 0 else 0


@dataclass
class SolverProfile:
    """Cost-relevant behavior of one (problem, solver) pair.

    min_width: smallest HAU count that solves the problem (monotone: any
    larger count also solves it). makespan: hours for a successful run as a
    function of the HAU count (a constant works too). fail_time: hours a
    failing iteration runs before exhausting memory (the max iteration time).
    """

    min_width: int
    makespan: Callable[[int], float] | float = 1.0
    fail_time: float = 1.0

    def __post_init__(self):
        if self.min_width < 1:
            raise ConfigError("min_width must be >= 1")
        if self.fail_time < 0:
            raise ConfigError("fail_time must be >= 0")

    def duration(self, width: int) -> float:
        if width < self.min_width:
            return self.fail_time
        if callable(self.makespan):
            return float(self.makespan(width))
        return float(self.makespan)

    def solves(self, width: int) -> bool:
        return width >= self.min_width


@dataclass
class CostModel:
    kind: str = "discrete"  # "continuous" | "discrete"
    spare_reuse: bool = True  # discrete only: reuse paid-up HAU hours

    def __post_init__(self):
        if self.kind not in ("continuous", "discrete"):
            raise ConfigError("cost model kind must be continuous or discrete")


def geometric_sequence(b: float, k: int) -> list[int]:
    """HAU counts ceil(b^i) for iterations i = 0..k-1."""
    if b <= 1:
        raise ConfigError("geometric base must be > 1")
    if k < 1:
        raise ConfigError("need at least one iteration")
    return [math.ceil(b**i) for i in range(k)]


def single_run_cost(width: int, duration: float, model: CostModel) -> float:
    """Cost of one clairvoyant run: duration * width, rounded up per HAU."""
    if model.kind == "continuous":
        return duration * width
    return _ceil(duration) * width


def min_width_cost(profile: SolverProfile, model: CostModel) -> float:
    return single_run_cost(profile.min_width, profile.duration(profile.min_width), model)


def ia_total_cost(
    profile: SolverProfile,
    b: float = 2.0,
    model: CostModel | None = None,
    max_width: int = 1 << 20,
) -> tuple[float, int]:
    """Total cost and iteration count of iterative allocation.

    Runs widths ceil(b^i) until the first success. Under the discrete model
    with spare_reuse, HAUs keep their paid-up hour across iterations: reuse
    is free until a HAU's paid-through time, extensions bill whole hours,
    and expired HAUs are released rather than extended (an extension would
    never be cheaper than a fresh allocation).
    """
    model = model or CostModel()
    if b <= 1:
        raise ConfigError("geometric base must be > 1")
    total = 0.0
    now = 0.0
    pool: list[list] = []  # [hau_count, paid_through], discrete reuse only
    i = 0
    while True:
        width = math.ceil(b**i)
        if width > max_width:
            raise RuntimeError(
                f"allocation exceeded max width {max_width} without success"
            )
        duration = profile.duration(width)
        if model.kind == "continuous":
            total += duration * width
        elif not model.spare_reuse:
            total += _ceil(duration) * width
        else:
            end = now + duration
            pool = [g for g in pool if g[1] > now + _CEIL_EPS]
            covered = 0
            for group in sorted(pool, key=lambda g: -g[1]):
                if covered >= width:
                    break
                take = min(group[0], width - covered)
                if group[1] < end - _CEIL_EPS:
                    extra = _ceil(end - group[1])
                    total += extra * take
                    if take < group[0]:
                        group[0] -= take
                        pool.append([take, group[1] + extra])
                    else:
                        group[1] += extra
                else:
                    pass  # still paid up: free reuse
                covered += take
            fresh = width - covered
            if fresh > 0:
                hours = _ceil(duration)
                total += hours * fresh
                pool.append([fresh, now + hours])
            now = end
        i += 1
        if profile.solves(width):
            return total, i


def ratio_bounds(b: float) -> tuple[float, float]:
    """Analytic (worst-case, average-case) cost ratios of the b^i strategy."""
    if b <= 1:
        raise ConfigError("geometric base must be > 1")
    return b * b / (b - 1), 2 * b * b / (b * b - 1)


@dataclass
class AllocationRow:
    min_width: int
    b: float
    model: str
    total_cost: float
    optimal_cost: float
    iterations: int

    @property
    def ratio(self) -> float:
        return self.total_cost / self.optimal_cost


def sweep(
    b: float,
    max_min_width: int,
    model: CostModel | None = None,
    fail_time: float = 1.0,
    makespan: float = 1.0,
) -> list[AllocationRow]:
    """Simulate every minimal width 1..max_min_width under one profile."""
    model = model or CostModel()
    rows = []
    for w_plus in range(1, max_min_width + 1):
        profile = SolverProfile(w_plus, makespan=makespan, fail_time=fail_time)
        total, iters = ia_total_cost(profile, b, model, max_width=4 * max_min_width)
        rows.append(
            AllocationRow(
                w_plus, b, model.kind, total, min_width_cost(profile, model), iters
            )
        )
    return rows


def empirical_min_width(
    problem,
    per_worker_node_limit: int,
    max_workers: int = 64,
    seed: int = 42,
) -> int:
    """Bridge to real runs: smallest worker count that solves the problem
    when each worker's open+closed lists are capped at the given size."""
    from parsearch.common import NodeLimitExceeded
    from parsearch.engine.core import EngineConfig
    from parsearch.engine.hda import hdastar

    workers = 1
    while workers <= max_workers:
        config = EngineConfig(
            workers=workers, node_limit=per_worker_node_limit, seed=seed
        )
        try:
            sol = hdastar(problem, config)
            if sol.solved:
                return workers
        except NodeLimitExceeded:
            pass
        workers *= 2
    raise RuntimeError(f"not solvable within {max_workers} capped workers")
