"""n-dimensional lattice domain with monotone coordinate moves.

States are coordinate tuples; a move increments a nonempty subset of
coordinates by one (staying within per-axis lengths), so the space is a DAG
from the origin to the far corner. A per-pattern cost table assigns one
nonnegative cost to each axis-increment pattern.
"""

from __future__ import annotations

from itertools import product

from parsearch.domains.base import Feature, State


class LatticeProblem:
    def __init__(
        self,
        lengths: tuple[int, ...],
        step_costs: dict[tuple[int, ...], float] | None = None,
    ):
        if not lengths or any(l < 1 for l in lengths):
            raise ValueError("per-axis lengths must be positive")
        self.lengths = tuple(lengths)
        self.dim = len(lengths)
        patterns = [p for p in product((0, 1), repeat=self.dim) if any(p)]
        if step_costs is None:
            step_costs = {p: 1.0 for p in patterns}
        for p in patterns:
            if p not in step_costs:
                raise ValueError(f"missing cost for move pattern {p}")
            if step_costs[p] < 0:
                raise ValueError(f"negative cost for move pattern {p}")
        self._patterns = patterns
        self.step_costs = dict(step_costs)
        self.initial = (0,) * self.dim
        self.goal = self.lengths

    def is_goal(self, state: State) -> bool:
        return state == self.goal

    def expand(self, state: tuple[int, ...]) -> list[tuple[State, float]]:
        out = []
        lengths = self.lengths
        for pat in self._patterns:
            nxt = tuple(x + d for x, d in zip(state, pat))
            if all(x <= l for x, l in zip(nxt, lengths)):
                out.append((nxt, self.step_costs[pat]))
        return out

    def h(self, state: tuple[int, ...]) -> float:
        return 0.0

    def features(self, state: tuple[int, ...]) -> list[Feature]:
        return [(i, x) for i, x in enumerate(state)]

    def canonical_bytes(self, state: tuple[int, ...]) -> bytes:
        return b"".join(x.to_bytes(4, "little") for x in state)

    def abstraction_features(self, state: tuple[int, ...]) -> list[Feature]:
        return [(i, x // 2) for i, x in enumerate(state)]

    def default_projection(self) -> dict[Feature, Feature]:
        proj = {}
        for i, l in enumerate(self.lengths):
            for x in range(l + 1):
                proj[(i, x)] = (i, x // 2)
        return proj

    def all_states(self):
        """Every lattice point; exhaustive checks only (small lattices)."""
        return product(*(range(l + 1) for l in self.lengths))
