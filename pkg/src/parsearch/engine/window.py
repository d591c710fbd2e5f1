"""Parallel window search: workers run independent IDA* iterations.

A shared monotone dispenser hands out f-cost bounds: the next bound is the
smallest pruned f-value (reported by finished iterations) that exceeds
every bound claimed so far. Each iteration is a bounded depth-first search
that returns the cheapest solution within its bound, and when a solution is
found at bound b the engine waits for every iteration holding a smaller
bound before declaring the best solution optimal.
"""

from __future__ import annotations

import random
import threading
import time

from parsearch.common import EPS, INF
from parsearch.domains.base import SearchProblem, validate_path
from parsearch.engine.core import EngineConfig, run_threaded
from parsearch.serial import BoundedDFS, SearchStats, Solution, merge_stats


class ParallelWindow:
    CHUNK = 256  # DFS events advanced per step

    def __init__(self, problem: SearchProblem, config: EngineConfig | None = None):
        self.problem = problem
        self.config = config or EngineConfig()
        self.p = self.config.workers
        self.lock = threading.Lock()
        self.claimed: list[float] = []
        self.exceeds: set[float] = set()
        self.running: dict[int, float] = {}
        self.completed: dict[float, float | None] = {}
        self.solutions: list[tuple[float, list, float]] = []
        self.incumbent_log: list[float] = []  # goal costs in discovery order
        self.solution_logs: dict[float, list[float]] = {}  # per claimed bound
        self.slots: list = [None] * self.p
        self.stats = [SearchStats() for _ in range(self.p)]
        self.result_cost = INF
        self.result_path: list = []
        self._stopped = False
        self._aborted = False

    @property
    def finished(self) -> bool:
        return self._stopped or self._aborted

    def abort(self) -> None:
        self._aborted = True

    def _peek_claim(self) -> float | None:
        if not self.claimed:
            return self.problem.h(self.problem.initial)
        mx = max(self.claimed)
        candidates = [v for v in self.exceeds if v > mx + EPS]
        return min(candidates) if candidates else None

    def runnable(self, w: int) -> bool:
        if self.finished:
            return False
        if self.slots[w] is not None:
            return True
        if self._peek_claim() is not None:
            return True
        return not self.running  # a step is needed to conclude the search

    def _try_finish(self) -> None:
        """Lock held. Finish when the wait-for-lower-bounds rule allows it."""
        if self.solutions:
            cost, path, bound = min(self.solutions, key=lambda s: (s[0], s[2]))
            if not any(rb < bound - EPS for rb in self.running.values()):
                self.result_cost = cost
                self.result_path = path
                self._stopped = True
        elif not self.running and self._peek_claim() is None:
            self._stopped = True  # space exhausted below every claimed bound

    def step(self, w: int) -> bool:
        if self.finished:
            return False
        slot = self.slots[w]
        if slot is None:
            with self.lock:
                bound = self._peek_claim()
                if bound is None:
                    self._try_finish()
                    return False
                self.claimed.append(bound)
                self.running[w] = bound
            dfs = BoundedDFS(
                self.problem,
                bound,
                find_best=True,
                expansion_limit=self.config.node_limit,
                collect_exceeds=True,
            )
            self.slots[w] = (bound, dfs)
            return True
        bound, dfs = slot
        dfs.run_chunk(self.CHUNK)
        if dfs.done:
            stats = self.stats[w]
            stats.expanded += dfs.expanded
            stats.generated += dfs.generated
            stats.iteration_expansions.append(dfs.expanded)
            with self.lock:
                self.exceeds.update(dfs.exceed_values)
                self.running.pop(w, None)
                self.completed[bound] = (
                    dfs.best_cost if dfs.best_cost < INF else None
                )
                self.incumbent_log.extend(dfs.solution_log)
                self.solution_logs[bound] = list(dfs.solution_log)
                if dfs.best_cost < INF:
                    self.solutions.append((dfs.best_cost, dfs.best_path, bound))
                self._try_finish()
            self.slots[w] = None
        return True

    def _run_interleaved(self) -> None:
        rng = random.Random(self.config.seed)
        while not self.finished:
            runnable = [w for w in range(self.p) if self.runnable(w)]
            if not runnable:
                raise RuntimeError("parallel window stalled")
            self.step(rng.choice(runnable))

    def run(self) -> Solution:
        start = time.perf_counter()
        if self.config.execution == "threaded":
            run_threaded(self)
        else:
            self._run_interleaved()
        wall = time.perf_counter() - start
        if self.result_path:
            validate_path(self.problem, self.result_path)
        stats = merge_stats(self.stats)
        stats.wall_time = wall
        return Solution(
            self.result_cost,
            self.result_path,
            stats,
            per_worker=self.stats,
            meta={
                "algorithm": "parallel_window",
                "workers": self.p,
                "bounds": sorted(self.claimed),
                "first_incumbent": self.incumbent_log[0] if self.incumbent_log else None,
                "solution_logs": self.solution_logs,
                "execution": self.config.execution,
                "seed": self.config.seed,
            },
        )


def parallel_window(
    problem: SearchProblem, config: EngineConfig | None = None
) -> Solution:
    return ParallelWindow(problem, config).run()
