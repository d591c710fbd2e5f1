"""Octile/4-connected gridmap pathfinding domain.

Map text format: a header line "width height connectivity" followed by
`height` rows of `width` characters, '.' traversable and '#' blocked.
Straight moves cost 1; diagonal moves (8-connected only) cost sqrt(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from parsearch.common import ParseError
from parsearch.domains.base import Feature, State

SQRT2 = math.sqrt(2.0)

_STRAIGHT = ((1, 0), (-1, 0), (0, 1), (0, -1))
_DIAGONAL = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class GridMap:
    width: int
    height: int
    blocked: frozenset[tuple[int, int]]
    connectivity: int = 8

    def in_bounds(self, cell: tuple[int, int]) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def traversable(self, cell: tuple[int, int]) -> bool:
        return self.in_bounds(cell) and cell not in self.blocked


def parse_grid(text: str) -> GridMap:
    """Parse the map format above; raise ParseError with a line number."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty map", 1)
    header = lines[0].split()
    if len(header) != 3:
        raise ParseError("header must be 'width height connectivity'", 1)
    try:
        width, height, conn = (int(tok) for tok in header)
    except ValueError:
        raise ParseError("header fields must be integers", 1) from None
    if conn not in (4, 8):
        raise ParseError("connectivity must be 4 or 8", 1)
    if width < 1 or height < 1:
        raise ParseError("width and height must be positive", 1)
    if len(lines) < height + 1:
        raise ParseError(f"expected {height} rows", len(lines) + 1)
    blocked = set()
    for y in range(height):
        row = lines[1 + y]
        if len(row) != width:
            raise ParseError(f"row has {len(row)} cells, expected {width}", y + 2)
        for x, ch in enumerate(row):
            if ch == "#":
                blocked.add((x, y))
            elif ch != ".":
                raise ParseError(f"illegal character {ch!r}", y + 2)
    return GridMap(width, height, frozenset(blocked), conn)


def grid_expand(
    grid: GridMap, cell: tuple[int, int]
) -> list[tuple[tuple[int, int], float]]:
    x, y = cell
    out = []
    for dx, dy in _STRAIGHT:
        nxt = (x + dx, y + dy)
        if grid.traversable(nxt):
            out.append((nxt, 1.0))
    if grid.connectivity == 8:
        for dx, dy in _DIAGONAL:
            nxt = (x + dx, y + dy)
            if grid.traversable(nxt):
                out.append((nxt, SQRT2))
    return out


def octile_h(a: tuple[int, int], b: tuple[int, int], connectivity: int = 8) -> float:
    dx = abs(a[0] - b[0])
    dy = abs(a[1] - b[1])
    if connectivity == 4:
        return float(dx + dy)
    lo, hi = (dx, dy) if dx < dy else (dy, dx)
    return SQRT2 * lo + (hi - lo)


class GridProblem:
    """SearchProblem over a GridMap between two traversable cells."""

    def __init__(
        self,
        grid: GridMap,
        start: tuple[int, int],
        goal: tuple[int, int],
        block_size: int = 4,
    ):
        if not grid.traversable(start):
            raise ValueError("start blocked")
        if not grid.traversable(goal):
            raise ValueError("goal blocked")
        self.grid = grid
        self.initial = start
        self.goal = goal
        self.block_size = block_size

    def is_goal(self, state: State) -> bool:
        return state == self.goal

    def expand(self, state: tuple[int, int]) -> list[tuple[State, float]]:
        return grid_expand(self.grid, state)

    def h(self, state: tuple[int, int]) -> float:
        return octile_h(state, self.goal, self.grid.connectivity)

    def features(self, state: tuple[int, int]) -> list[Feature]:
        return [state]

    def canonical_bytes(self, state: tuple[int, int]) -> bytes:
        return state[0].to_bytes(4, "little") + state[1].to_bytes(4, "little")

    def abstraction_features(self, state: tuple[int, int]) -> list[Feature]:
        k = self.block_size
        return [(state[0] // k, state[1] // k)]

    def default_projection(self) -> dict[Feature, Feature]:
        k = self.block_size
        proj = {}
        for x in range(self.grid.width):
            for y in range(self.grid.height):
                proj[(x, y)] = (x // k, y // k)
        return proj


def random_grid(
    width: int,
    height: int,
    fill: float,
    seed,
    connectivity: int = 8,
) -> GridMap:
    """Random map with roughly `fill` fraction of blocked cells."""
    import random as _random

    rng = seed if isinstance(seed, _random.Random) else _random.Random(seed)
    blocked = {
        (x, y)
        for x in range(width)
        for y in range(height)
        if rng.random() < fill
    }
    return GridMap(width, height, frozenset(blocked), connectivity)
