"""Reference serial searches: A*, uniform-cost oracle, IDA*, weighted A*.

These provide both the baselines for the parallel engines and the
correctness oracles used throughout the test suite.
"""

from __future__ import annotations

import time
from array import array
from dataclasses import dataclass, field
from heapq import heappop, heappush

from parsearch.common import EPS, INF, ConfigError, NodeLimitExceeded
from parsearch.domains.base import SearchProblem, State, validate_path

DEFAULT_NODE_LIMIT = 10_000_000


@dataclass
class SearchStats:
    expanded: int = 0
    generated: int = 0
    reopened: int = 0
    duplicates: int = 0
    max_open: int = 0
    wall_time: float = 0.0
    # Parallel bookkeeping (cross-worker traffic only; zero for serial runs).
    sent: int = 0
    received: int = 0
    sent_batches: int = 0
    received_batches: int = 0
    # Per-iteration expansion counts for the iterative-deepening family.
    iteration_expansions: list[int] = field(default_factory=list)
    # f = g + h of every expanded node, for efficiency-fraction reporting.
    expanded_f: array = field(default_factory=lambda: array("d"))

    def count_f_below(self, threshold: float) -> int:
        t = threshold - EPS
        return sum(1 for f in self.expanded_f if f < t)

    def to_dict(self) -> dict:
        return {
            "expanded": self.expanded,
            "generated": self.generated,
            "reopened": self.reopened,
            "duplicates": self.duplicates,
            "max_open": self.max_open,
            "wall_time": self.wall_time,
            "sent": self.sent,
            "received": self.received,
            "sent_batches": self.sent_batches,
            "received_batches": self.received_batches,
        }


def merge_stats(parts: list[SearchStats]) -> SearchStats:
    total = SearchStats()
    for s in parts:
        total.expanded += s.expanded
        total.generated += s.generated
        total.reopened += s.reopened
        total.duplicates += s.duplicates
        total.max_open = max(total.max_open, s.max_open)
        total.wall_time = max(total.wall_time, s.wall_time)
        total.sent += s.sent
        total.received += s.received
        total.sent_batches += s.sent_batches
        total.received_batches += s.received_batches
        total.expanded_f.extend(s.expanded_f)
    return total


@dataclass
class Solution:
    cost: float
    path: list
    stats: SearchStats
    per_worker: list[SearchStats] | None = None
    meta: dict = field(default_factory=dict)

    @property
    def solved(self) -> bool:
        return self.cost < INF


class BestFirstSearch:
    """Steppable best-first search with the full reopening branch.

    Priority is g + weight*h (or plain h for weight=inf). The open list is a
    binary heap keyed by (priority, -g, insertion sequence): ties on priority
    prefer the larger g, remaining ties are FIFO. A g-value that matches the
    stored one within EPS counts as a duplicate, never as an improvement.
    """

    def __init__(
        self,
        problem: SearchProblem,
        weight: float = 1.0,
        node_limit: int = DEFAULT_NODE_LIMIT,
        record_trace: bool = False,
    ):
        if weight < 1.0:
            raise ConfigError("weight must be >= 1 (or inf)")
        self.problem = problem
        self.weight = weight
        self.node_limit = node_limit
        self.stats = SearchStats()
        self.trace: list | None = [] if record_trace else None
        self.goal_state: State | None = None
        self.goal_cost = INF
        self._heap: list = []
        self._seq = 0
        # state -> (g, parent, h) for open entries / closed nodes.
        self._open: dict = {}
        self._closed: dict = {}
        h0 = problem.h(problem.initial)
        self._push(problem.initial, 0.0, None, h0)

    def _priority(self, g: float, h: float) -> float:
        if self.weight == INF:
            return h
        return g + self.weight * h

    def _push(self, state: State, g: float, parent, h: float) -> None:
        self._open[state] = (g, parent, h)
        heappush(self._heap, (self._priority(g, h), -g, self._seq, state))
        self._seq += 1
        if len(self._open) > self.stats.max_open:
            self.stats.max_open = len(self._open)

    def step(self) -> bool:
        """Expand one node. Returns False once the search has finished."""
        if self.goal_cost < INF:
            return False
        heap = self._heap
        open_tbl = self._open
        while heap:
            _, neg_g, _, state = heappop(heap)
            entry = open_tbl.get(state)
            if entry is None or entry[0] != -neg_g:
                continue  # stale heap entry
            g, parent, h = entry
            del open_tbl[state]
            self._closed[state] = (g, parent)
            self.stats.expanded += 1
            self.stats.expanded_f.append(g + h)
            if self.trace is not None:
                self.trace.append((state, g, g + h))
            if self.problem.is_goal(state):
                self.goal_state = state
                self.goal_cost = g
                return False
            for succ, cost in self.problem.expand(state):
                self.stats.generated += 1
                g1 = g + cost
                closed_entry = self._closed.get(succ)
                if closed_entry is not None:
                    if g1 < closed_entry[0] - EPS:
                        del self._closed[succ]
                        self.stats.reopened += 1
                        self._push(succ, g1, state, self.problem.h(succ))
                    else:
                        self.stats.duplicates += 1
                    continue
                open_entry = open_tbl.get(succ)
                if open_entry is not None:
                    if g1 < open_entry[0] - EPS:
                        self._push(succ, g1, state, open_entry[2])
                    else:
                        self.stats.duplicates += 1
                    continue
                self._push(succ, g1, state, self.problem.h(succ))
            if len(open_tbl) + len(self._closed) > self.node_limit:
                raise NodeLimitExceeded(self.node_limit)
            return True
        return False

    def reconstruct_path(self) -> list:
        if self.goal_state is None:
            return []
        path = [self.goal_state]
        state = self.goal_state
        while True:
            _, parent = self._closed[state]
            if parent is None:
                break
            path.append(parent)
            state = parent
        path.reverse()
        return path

    def run(self) -> Solution:
        start = time.perf_counter()
        while self.step():
            pass
        self.stats.wall_time = time.perf_counter() - start
        path = self.reconstruct_path()
        if path:
            validate_path(self.problem, path)
        sol = Solution(self.goal_cost, path, self.stats)
        if self.trace is not None:
            sol.meta["trace"] = self.trace
        return sol


def astar(
    problem: SearchProblem,
    node_limit: int = DEFAULT_NODE_LIMIT,
    record_trace: bool = False,
) -> Solution:
    sol = BestFirstSearch(
        problem, 1.0, node_limit, record_trace=record_trace
    ).run()
    sol.meta["algorithm"] = "astar"
    return sol


def wastar(
    problem: SearchProblem, weight: float, node_limit: int = DEFAULT_NODE_LIMIT
) -> Solution:
    sol = BestFirstSearch(problem, weight, node_limit).run()
    sol.meta["algorithm"] = "wastar"
    sol.meta["weight"] = weight
    return sol


class _ZeroHeuristic:
    """View of a problem with h forced to zero (uniform-cost search)."""

    def __init__(self, problem: SearchProblem):
        self._problem = problem
        self.initial = problem.initial

    def is_goal(self, state):
        return self._problem.is_goal(state)

    def expand(self, state):
        return self._problem.expand(state)

    def h(self, state):
        return 0.0

    def features(self, state):
        return self._problem.features(state)

    def canonical_bytes(self, state):
        return self._problem.canonical_bytes(state)


def uniform_cost_oracle(
    problem: SearchProblem, node_limit: int = DEFAULT_NODE_LIMIT
) -> Solution:
    sol = BestFirstSearch(_ZeroHeuristic(problem), 1.0, node_limit).run()
    sol.meta["algorithm"] = "uniform_cost"
    return sol


class BoundedDFS:
    """One steppable IDA* iteration: depth-first search under an f bound.

    In first-found mode the iteration stops at the first goal within the
    bound (classic IDA*). In best-within-bound mode it records the goal,
    keeps searching with the incumbent as an extra pruning bound, and
    returns the cheapest solution whose path stays within the f bound --
    the parallel window engine needs that stronger guarantee because its
    bound sequence may skip values.
    """

    def __init__(
        self,
        problem: SearchProblem,
        bound: float,
        find_best: bool = False,
        expansion_limit: int = DEFAULT_NODE_LIMIT,
        collect_exceeds: bool = False,
    ):
        self.problem = problem
        self.bound = bound
        self.find_best = find_best
        self.expansion_limit = expansion_limit
        self.collect_exceeds = collect_exceeds
        self.exceed_values: set[float] = set()
        self.solution_log: list[float] = []  # goal costs in discovery order
        self.expanded = 0
        self.generated = 0
        self.min_exceed = INF
        self.best_cost = INF
        self.best_path: list = []
        self.done = False
        self._path: list = []
        self._on_path: set = set()
        # Stack frames: [state, g, successor list, next index].
        self._stack: list = []
        self._enter(problem.initial, 0.0)

    def _enter(self, state: State, g: float) -> None:
        f = g + self.problem.h(state)
        if f > self.bound + EPS:
            if f < self.min_exceed:
                self.min_exceed = f
            if self.collect_exceeds:
                self.exceed_values.add(f)
            return
        if self.find_best and f >= self.best_cost - EPS:
            return
        if self.problem.is_goal(state):
            self.solution_log.append(g)
            if g < self.best_cost:
                self.best_cost = g
                self.best_path = self._path + [state]
            if not self.find_best:
                self.done = True
            return
        self._stack.append([state, g, None, 0])
        self._path.append(state)
        self._on_path.add(state)

    def step(self) -> bool:
        """Advance by one node event; False once the iteration is over."""
        if self.done:
            return False
        if not self._stack:
            self.done = True
            return False
        frame = self._stack[-1]
        state, g, succs, idx = frame
        if succs is None:
            succs = self.problem.expand(state)
            frame[2] = succs
            self.expanded += 1
            self.generated += len(succs)
            if self.expanded > self.expansion_limit:
                raise NodeLimitExceeded(self.expansion_limit, "IDA* iteration")
        if idx < len(succs):
            frame[3] = idx + 1
            succ, cost = succs[idx]
            if succ not in self._on_path:
                self._enter(succ, g + cost)
        else:
            self._stack.pop()
            self._path.pop()
            self._on_path.discard(state)
        if self.done or not self._stack:
            self.done = True
            return False
        return True

    def run_chunk(self, n: int) -> bool:
        """Advance up to n node events with the hot loop hoisted into locals.

        Semantically identical to calling step() n times; returns False once
        the iteration is over.
        """
        if self.done:
            return False
        problem = self.problem
        expand = problem.expand
        h = problem.h
        is_goal = problem.is_goal
        stack = self._stack
        path = self._path
        on_path = self._on_path
        bound = self.bound
        find_best = self.find_best
        collect = self.collect_exceeds
        best = self.best_cost
        min_exceed = self.min_exceed
        expanded = self.expanded
        generated = self.generated
        limit = self.expansion_limit
        for _ in range(n):
            if not stack:
                self.done = True
                break
            frame = stack[-1]
            succs = frame[2]
            if succs is None:
                succs = expand(frame[0])
                frame[2] = succs
                expanded += 1
                generated += len(succs)
                if expanded > limit:
                    self.expanded = expanded
                    raise NodeLimitExceeded(limit, "IDA* iteration")
            idx = frame[3]
            if idx < len(succs):
                frame[3] = idx + 1
                succ, cost = succs[idx]
                if succ not in on_path:
                    g1 = frame[1] + cost
                    f = g1 + h(succ)
                    if f > bound + EPS:
                        if f < min_exceed:
                            min_exceed = f
                        if collect:
                            self.exceed_values.add(f)
                    elif find_best and f >= best - EPS:
                        pass
                    elif is_goal(succ):
                        self.solution_log.append(g1)
                        if g1 < best:
                            best = g1
                            self.best_path = path + [succ]
                        if not find_best:
                            self.done = True
                            break
                    else:
                        stack.append([succ, g1, None, 0])
                        path.append(succ)
                        on_path.add(succ)
            else:
                stack.pop()
                path.pop()
                on_path.discard(frame[0])
        self.best_cost = best
        self.min_exceed = min_exceed
        self.expanded = expanded
        self.generated = generated
        if not stack:
            self.done = True
        return not self.done

    def run(self):
        while self.run_chunk(1 << 14):
            pass
        return self


def idastar(
    problem: SearchProblem, node_limit: int = DEFAULT_NODE_LIMIT
) -> Solution:
    """Iterative-deepening A*: depth-first iterations under a growing f bound.

    The first bound is h(initial); each next bound is the smallest f that
    exceeded the current one. Stats record per-iteration expansions.
    """
    start = time.perf_counter()
    stats = SearchStats()
    bound = problem.h(problem.initial)
    while True:
        it = BoundedDFS(problem, bound, expansion_limit=node_limit).run()
        stats.iteration_expansions.append(it.expanded)
        stats.expanded += it.expanded
        stats.generated += it.generated
        if it.best_cost < INF:
            stats.wall_time = time.perf_counter() - start
            validate_path(problem, it.best_path)
            return Solution(
                it.best_cost,
                it.best_path,
                stats,
                meta={"algorithm": "idastar", "bounds": len(stats.iteration_expansions)},
            )
        if it.min_exceed == INF:
            stats.wall_time = time.perf_counter() - start
            return Solution(INF, [], stats, meta={"algorithm": "idastar"})
        bound = it.min_exceed
