"""Hash-distributed A*: decentralized search with per-worker open/closed lists.

Every generated state is routed to the worker that owns it under the
configured hash strategy; the owner alone inserts it, detects duplicates,
and may reopen it from its closed list when a cheaper path arrives later.
Sends are non-blocking and batched per destination; termination is proved
by message counting (see `parsearch.termination`).
"""

from __future__ import annotations

import random
import time
from heapq import heappop, heappush

from parsearch.common import EPS, INF, NodeLimitExceeded
from parsearch.domains.base import SearchProblem, validate_path
from parsearch.engine.core import (
    ChannelTransport,
    DirectTransport,
    EngineConfig,
    Incumbent,
    run_interleaved,
    run_threaded,
)
from parsearch.hashing import make_strategy
from parsearch.serial import SearchStats, Solution, merge_stats
from parsearch.termination import (
    ControlMessage,
    conclude,
    on_control,
    start_second_wave,
    start_time_ring,
    start_two_wave,
    time_ring_check,
    two_wave_check,
)


class _Worker:
    """One search worker: local open/closed, outgoing batches, counters."""

    def __init__(self, wid: int, engine: "HDAStar"):
        self.id = wid
        self.engine = engine
        self.heap: list = []
        self.seq = 0
        self.open_tbl: dict = {}  # state -> (g, parent, h)
        self.closed: dict = {}  # state -> (g, parent)
        self.out = [[] for _ in range(engine.p)]  # per-destination batches
        self.stats = SearchStats()
        self.rng = random.Random(engine.config.seed * 1_000_003 + wid)
        self.trace: list | None = [] if engine.config.record_trace else None
        self.last_flush = time.monotonic()
        # Termination bookkeeping (only this worker updates these).
        self.clock = 0
        self.max_received_stamp = -1
        self.sent_msgs = 0
        self.received_msgs = 0

    @property
    def quiescent(self) -> bool:
        """Mailbox drained, batches flushed, open at or above the incumbent."""
        if self.engine.transport.boxes[self.id]:
            return False
        if any(self.out):
            return False
        return self.open_min_f() >= self.engine.incumbent.cost - EPS

    def open_min_f(self) -> float:
        heap = self.heap
        tbl = self.open_tbl
        while heap:
            prio, neg_g, _, state = heap[0]
            entry = tbl.get(state)
            if entry is None or entry[0] != -neg_g:
                heappop(heap)
                continue
            return prio
        return INF

    def push(self, state, g: float, parent, h: float) -> None:
        self.open_tbl[state] = (g, parent, h)
        heappush(self.heap, (g + h, -g, self.seq, state))
        self.seq += 1
        if len(self.open_tbl) > self.stats.max_open:
            self.stats.max_open = len(self.open_tbl)


class HDAStar:
    """Decentralized A* engine (Algorithm: drain mailbox, then expand)."""

    def __init__(
        self,
        problem: SearchProblem,
        config: EngineConfig | None = None,
        strategy=None,
        policy=None,
        on_detect_pass=None,
    ):
        self.problem = problem
        self.config = config or EngineConfig()
        self.p = self.config.workers
        if strategy is None:
            strategy = make_strategy(
                self.config.strategy,
                problem,
                self.config.seed,
                self.config.strategy_config,
            )
        self.strategy = strategy
        self.policy = policy
        self.on_detect_pass = on_detect_pass
        if self.config.execution == "interleaved":
            self.transport = ChannelTransport(self.p)
        else:
            self.transport = DirectTransport(self.p)
        self.incumbent = Incumbent()
        self.workers = [_Worker(w, self) for w in range(self.p)]
        self._stopped = False
        self._aborted = False
        self.detect_in_flight = False
        self._work_since_detect = True  # retry detection only after progress
        self.rounds = 0  # detection attempts
        self.waves = 0  # wave/ring traversals launched
        self.last_detect_time = 0.0
        seed_rng = random.Random(self.config.seed ^ 0x5EED)
        root = problem.initial
        owner = self.strategy.owner(root, self.p, seed_rng)
        self.workers[owner].push(root, 0.0, None, problem.h(root))

    # -- runner interface ----------------------------------------------------

    @property
    def finished(self) -> bool:
        return self._stopped or self._aborted

    def abort(self) -> None:
        self._aborted = True

    def runnable(self, w: int) -> bool:
        if self.finished:
            return False
        if self.transport.boxes[w]:
            return True
        worker = self.workers[w]
        if worker.open_min_f() < self.incumbent.cost - EPS:
            return True
        if any(worker.out):
            return True
        if (
            w == 0
            and not self.detect_in_flight
            and self._work_since_detect
            and worker.quiescent
        ):
            return True
        return False

    def step(self, w: int) -> bool:
        """One loop iteration of worker w: drain mailbox fully, then expand."""
        if self.finished:
            return False
        worker = self.workers[w]
        did = False
        box = self.transport.boxes[w]
        while box:
            item = box.popleft()
            did = True
            if item[0] == "W":
                self._receive_work(worker, item)
            else:
                self._handle_control(worker, item[1])
            if self.finished:
                return True
        # Threaded mode drains before every expansion, so expand one node per
        # step. In interleaved mode no message can arrive mid-step (the
        # scheduler is the only deliverer), so a burst of expansions is
        # equivalent to that many drain-then-expand iterations.
        burst = self.config.burst if self.config.execution == "interleaved" else 1
        expanded_any = False
        for _ in range(burst):
            if worker.open_min_f() >= self.incumbent.cost - EPS:
                break
            self._expand(worker)
            expanded_any = True
            if self.finished:
                return True
        if expanded_any:
            if self.config.execution == "threaded":
                now = time.monotonic()
                if now - worker.last_flush >= self.config.flush_interval:
                    self._flush_all(worker)
            return True
        if self._flush_all(worker):
            did = True
        if w == 0:
            did = self._maybe_initiate(worker) or did
        return did

    # -- search mechanics ----------------------------------------------------

    def _insert(self, worker: _Worker, state, g1: float, parent) -> None:
        if self.strategy.deterministic:
            assert self.strategy.owner(state, self.p) == worker.id, (
                "state inserted at a non-owner worker"
            )
        stats = worker.stats
        closed_entry = worker.closed.get(state)
        if closed_entry is not None:
            if g1 < closed_entry[0] - EPS:
                del worker.closed[state]
                stats.reopened += 1
                worker.push(state, g1, parent, self.problem.h(state))
            else:
                stats.duplicates += 1
            return
        open_entry = worker.open_tbl.get(state)
        if open_entry is not None:
            if g1 < open_entry[0] - EPS:
                worker.push(state, g1, parent, open_entry[2])
            else:
                stats.duplicates += 1
            return
        worker.push(state, g1, parent, self.problem.h(state))
        if len(worker.open_tbl) + len(worker.closed) > self.config.node_limit:
            raise NodeLimitExceeded(self.config.node_limit, f"worker {worker.id}")

    def _receive_work(self, worker: _Worker, item) -> None:
        _, _src, stamp, batch = item
        self._work_since_detect = True
        worker.received_msgs += 1
        worker.stats.received_batches += 1
        worker.stats.received += len(batch)
        if stamp > worker.max_received_stamp:
            worker.max_received_stamp = stamp
        for state, g1, parent in batch:
            self._insert(worker, state, g1, parent)

    def _expand(self, worker: _Worker) -> None:
        heap = worker.heap
        tbl = worker.open_tbl
        while True:
            _, neg_g, _, state = heappop(heap)
            entry = tbl.get(state)
            if entry is not None and entry[0] == -neg_g:
                break
        g, parent, h = entry
        del tbl[state]
        worker.closed[state] = (g, parent)
        self._work_since_detect = True
        stats = worker.stats
        stats.expanded += 1
        stats.expanded_f.append(g + h)
        if worker.trace is not None:
            worker.trace.append((state, g, g + h))
        if self.problem.is_goal(state):
            self.incumbent.offer(g, state, worker.id)
        batch_size = self.config.batch_size
        for succ, cost in self.problem.expand(state):
            stats.generated += 1
            g1 = g + cost
            owner = self.strategy.owner(succ, self.p, worker.rng)
            if owner == worker.id:
                self._insert(worker, succ, g1, state)
            else:
                buf = worker.out[owner]
                buf.append((succ, g1, state))
                if len(buf) >= batch_size:
                    self._flush(worker, owner)
        if len(worker.open_tbl) + len(worker.closed) > self.config.node_limit:
            raise NodeLimitExceeded(self.config.node_limit, f"worker {worker.id}")

    def _flush(self, worker: _Worker, dst: int) -> bool:
        buf = worker.out[dst]
        if not buf:
            return False
        worker.sent_msgs += 1
        worker.stats.sent_batches += 1
        worker.stats.sent += len(buf)
        self.transport.send(worker.id, dst, ("W", worker.id, worker.clock, list(buf)))
        buf.clear()
        return True

    def _flush_all(self, worker: _Worker) -> bool:
        did = False
        for dst in range(self.p):
            if worker.out[dst]:
                did = self._flush(worker, dst) or did
        worker.last_flush = time.monotonic()
        return did

    # -- termination ----------------------------------------------------------

    def _maybe_initiate(self, worker: _Worker) -> bool:
        if self.detect_in_flight or self.finished:
            return False
        if not self._work_since_detect or not worker.quiescent:
            return False
        if self.config.execution == "threaded":
            now = time.monotonic()
            if now - self.last_detect_time < self.config.detection_interval:
                return False
            self.last_detect_time = now
        self._work_since_detect = False
        self.rounds += 1
        if self.p == 1:
            if self.config.termination == "two-wave":
                self.waves += 2
                ok = two_wave_check([worker])
            else:
                self.waves += 1
                ok = time_ring_check([worker])
            if ok:
                self._detection_passed()
            return True
        if self.config.termination == "two-wave":
            msg = start_two_wave(0, worker)
        else:
            msg = start_time_ring(0, worker)
        self.waves += 1
        self.detect_in_flight = True
        self.transport.send(0, 1, ("C", msg))
        return True

    def _handle_control(self, worker: _Worker, msg: ControlMessage) -> None:
        if worker.id == msg.initiator:
            verdict = conclude(msg, worker)
            if verdict == "wave2":
                self.waves += 1
                msg2 = start_second_wave(msg, worker)
                self.transport.send(worker.id, (worker.id + 1) % self.p, ("C", msg2))
            elif verdict == "pass":
                self._detection_passed()
            else:
                self.detect_in_flight = False
        else:
            dst, fwd = on_control(msg, worker.id, worker, self.p)
            self.transport.send(worker.id, dst, ("C", fwd))

    def _detection_passed(self) -> None:
        if self.on_detect_pass is not None:
            self.on_detect_pass(self)
        self.detect_in_flight = False
        self._stopped = True

    # -- results ---------------------------------------------------------------

    def improving_work_pending(self) -> list:
        """Undelivered or unprocessed triplets that beat the incumbent.

        Empty at any correct termination; the schedule-fuzzing tests call
        this from the detection-pass hook.
        """
        bound = self.incumbent.cost - EPS
        bad = []
        items = list(self.transport.in_flight_items())
        for box in self.transport.boxes:
            items.extend(box)
        for item in items:
            if item[0] != "W":
                continue
            for state, g1, parent in item[3]:
                if g1 + self.problem.h(state) < bound:
                    bad.append((state, g1))
        for worker in self.workers:
            mf = worker.open_min_f()
            if mf < bound:
                bad.append((f"open[{worker.id}]", mf))
        return bad

    def _lookup_entry(self, state):
        """Best (g, parent) for a state across all workers' tables."""
        best = None
        for worker in self.workers:
            for tbl in (worker.closed, worker.open_tbl):
                entry = tbl.get(state)
                if entry is not None and (best is None or entry[0] < best[0]):
                    best = (entry[0], entry[1])
        return best

    def _reconstruct(self) -> list:
        state = self.incumbent.state
        if state is None:
            return []
        path = [state]
        seen = {state}
        while True:
            entry = self._lookup_entry(state)
            if entry is None:
                raise RuntimeError("broken parent chain during reconstruction")
            parent = entry[1]
            if parent is None:
                break
            if parent in seen:
                raise RuntimeError("cycle in parent chain during reconstruction")
            seen.add(parent)
            path.append(parent)
            state = parent
        path.reverse()
        return path

    def run(self) -> Solution:
        start = time.perf_counter()
        if self.config.execution == "interleaved":
            ticks = run_interleaved(
                self, self.config.seed, self.policy, self.config.max_ticks
            )
        else:
            run_threaded(self)
            ticks = None
        wall = time.perf_counter() - start
        # Post-termination invariants: nothing pending, counters balanced.
        assert not self.improving_work_pending(), "premature termination"
        sent = sum(w.stats.sent for w in self.workers)
        received = sum(w.stats.received for w in self.workers)
        assert sent == received, f"triplet conservation violated: {sent} != {received}"
        path = self._reconstruct()
        if path:
            validate_path(self.problem, path)
        per_worker = [w.stats for w in self.workers]
        stats = merge_stats(per_worker)
        stats.wall_time = wall
        sol = Solution(
            self.incumbent.cost,
            path,
            stats,
            per_worker=per_worker,
            meta={
                "algorithm": "hdastar",
                "strategy": getattr(self.strategy, "name", "custom"),
                "workers": self.p,
                "batch_size": self.config.batch_size,
                "termination": self.config.termination,
                "execution": self.config.execution,
                "seed": self.config.seed,
                "detection_rounds": self.rounds,
                "detection_waves": self.waves,
                "ticks": ticks,
            },
        )
        if self.config.record_trace:
            sol.meta["trace"] = [list(w.trace) for w in self.workers]
        return sol


def hdastar(
    problem: SearchProblem,
    config: EngineConfig | None = None,
    strategy=None,
    policy=None,
    on_detect_pass=None,
) -> Solution:
    return HDAStar(problem, config, strategy, policy, on_detect_pass).run()
