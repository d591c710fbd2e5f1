"""Shared engine machinery: config, incumbent cell, transports, runners.

Engines run on one of two substrates with identical step logic:

* interleaved (default): a schedule-controlled single-threaded driver picks
  one action per tick (step a worker, or deliver one in-flight message) from
  a seeded policy. Runs are fully deterministic and message delivery can be
  made adversarial, which the termination tests rely on.
* threaded: one OS thread per worker, immediate message delivery through
  thread-safe mailboxes. Wall-clock oriented; counters are not reproducible.
"""

from __future__ import annotations

import random
import threading
import time
from collections import deque
from dataclasses import dataclass, field

from parsearch.common import INF, ConfigError
from parsearch.serial import DEFAULT_NODE_LIMIT


def default_batch_size(workers: int) -> int:
    """Message packing: 10 states below 16 workers, 100 at or above."""
    return 10 if workers < 16 else 100


@dataclass
class EngineConfig:
    workers: int = 1
    strategy: str = "zobrist"
    batch_size: int | None = None
    seed: int = 42
    node_limit: int = DEFAULT_NODE_LIMIT
    termination: str = "two-wave"  # "two-wave" | "time"
    execution: str = "interleaved"  # "interleaved" | "threaded"
    record_trace: bool = False
    flush_interval: float = 0.001  # threaded: flush partial batches (s)
    detection_interval: float = 0.0005  # threaded: min gap between checks (s)
    max_ticks: int | None = None  # interleaved: safety valve
    burst: int = 16  # interleaved: expansions per scheduler tick
    strategy_config: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.batch_size is None:
            self.batch_size = default_batch_size(self.workers)
        if self.batch_size < 1:
            raise ConfigError("batch size must be >= 1")
        if self.termination not in ("two-wave", "time"):
            raise ConfigError("termination must be 'two-wave' or 'time'")
        if self.execution not in ("interleaved", "threaded"):
            raise ConfigError("execution must be 'interleaved' or 'threaded'")
        if self.burst < 1:
            raise ConfigError("burst must be >= 1")


class Incumbent:
    """Best solution cost found so far; updates are compare-and-reduce."""

    def __init__(self):
        self.cost = INF
        self.state = None
        self.worker: int | None = None
        self.updates = 0
        self._lock = threading.Lock()

    def offer(self, cost: float, state, worker: int) -> bool:
        with self._lock:
            if cost < self.cost:
                self.cost = cost
                self.state = state
                self.worker = worker
                self.updates += 1
                return True
            return False


# Message envelopes: ("W", src, stamp, batch) with batch a list of
# (state, g, parent) triplets, or ("C", ControlMessage).


class DirectTransport:
    """Immediate delivery into per-worker mailboxes (threaded mode)."""

    def __init__(self, p: int):
        self.boxes = [deque() for _ in range(p)]

    def send(self, src: int, dst: int, item) -> None:
        self.boxes[dst].append(item)

    def pending_channels(self):
        return []

    def in_flight_items(self):
        return []


class ChannelTransport:
    """Per-(src, dst) FIFO channels; the scheduler decides delivery order.

    Per-sender FIFO order is guaranteed because a channel only ever delivers
    its head; different channels may be delayed arbitrarily.
    """

    def __init__(self, p: int):
        self.boxes = [deque() for _ in range(p)]
        self.channels: dict[tuple[int, int], deque] = {}

    def send(self, src: int, dst: int, item) -> None:
        self.channels.setdefault((src, dst), deque()).append(item)

    def deliver(self, channel: tuple[int, int]) -> None:
        queue = self.channels[channel]
        self.boxes[channel[1]].append(queue.popleft())

    def pending_channels(self) -> list[tuple[int, int]]:
        return [c for c, q in self.channels.items() if q]

    def in_flight_items(self):
        for queue in self.channels.values():
            yield from queue


class SchedulePolicy:
    """Seeded random action policy with a fixed delivery bias.

    The default bias favors delivery, modeling a low-latency network where
    sent batches arrive promptly relative to expansion work; starving
    delivery instead makes workers chase stale local nodes and blows up
    search overhead.
    """

    def __init__(self, seed: int, delivery_bias: float = 0.9):
        self.rng = random.Random(seed)
        self.delivery_bias = delivery_bias

    def choose(self, steps: list, delivers: list):
        if steps and delivers:
            if self.rng.random() < self.delivery_bias:
                return self.rng.choice(delivers)
            return self.rng.choice(steps)
        pool = steps or delivers
        return self.rng.choice(pool)


class AdversarialPolicy(SchedulePolicy):
    """Per-seed random delivery bias; low draws starve delivery for long
    stretches, which is what the termination-detection fuzzing wants."""

    def __init__(self, seed: int):
        super().__init__(seed)
        self.delivery_bias = self.rng.uniform(0.05, 0.95)


class EagerWorkerPolicy:
    """Run the lowest-id runnable worker dry before delivering anything.

    Produces the pessimal delivery order used by the expansion-misordering
    tests: a worker exhausts its local open list before any cross-worker
    message arrives.
    """

    def choose(self, steps: list, delivers: list):
        if steps:
            return min(steps)
        return min(delivers)


def run_interleaved(engine, seed: int, policy=None, max_ticks: int | None = None):
    """Drive an engine's workers step by step from a seeded schedule.

    The engine exposes: p, transport (ChannelTransport), runnable(w),
    step(w), finished. Raises RuntimeError on stall or tick exhaustion.
    """
    policy = policy or SchedulePolicy(seed)
    ticks = 0
    while not engine.finished:
        steps = [("step", w) for w in range(engine.p) if engine.runnable(w)]
        delivers = [
            ("deliver", c) for c in engine.transport.pending_channels()
        ]
        if not steps and not delivers:
            raise RuntimeError(
                "interleaver stalled: no runnable worker, nothing in flight"
            )
        kind, arg = policy.choose(steps, delivers)
        if kind == "step":
            engine.step(arg)
        else:
            engine.transport.deliver(arg)
        ticks += 1
        if max_ticks is not None and ticks > max_ticks:
            raise RuntimeError(f"interleaver exceeded {max_ticks} ticks")
    return ticks


def run_threaded(engine, idle_sleep: float = 0.0002):
    """One OS thread per worker; loops step(w) until the engine finishes."""
    errors: list[BaseException] = []

    def loop(w: int) -> None:
        try:
            while not engine.finished:
                if not engine.step(w):
                    time.sleep(idle_sleep)
        except BaseException as exc:  # propagate OOM etc. to the caller
            errors.append(exc)
            engine.abort()

    threads = [
        threading.Thread(target=loop, args=(w,), daemon=True)
        for w in range(engine.p)
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    if errors:
        raise errors[0]
