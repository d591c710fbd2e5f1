"""Sliding-tile puzzle domain (8-puzzle, 15-puzzle, ...).

States are flat tuples of length n*n holding a permutation of 0..n*n-1,
where 0 is the blank. The goal places tiles in order with the blank last.
"""

from __future__ import annotations

import math
import random

from parsearch.domains.base import Feature, State


class TilePuzzle:
    """n x n sliding-tile puzzle with unit move costs and Manhattan h."""

    def __init__(self, initial: tuple[int, ...], n: int | None = None):
        if n is None:
            n = math.isqrt(len(initial))
        if n < 2 or n * n != len(initial):
            raise ValueError("initial state is not an n*n permutation, n >= 2")
        if sorted(initial) != list(range(n * n)):
            raise ValueError("initial state is not a permutation of 0..n*n-1")
        self.n = n
        self.ncells = n * n
        self.initial = tuple(initial)
        self.goal = goal_state(n)

        # Blank moves per cell and Manhattan contribution per (tile, pos).
        self._moves: list[tuple[int, ...]] = []
        for i in range(self.ncells):
            r, c = divmod(i, n)
            m = []
            if r > 0:
                m.append(i - n)
            if r < n - 1:
                m.append(i + n)
            if c > 0:
                m.append(i - 1)
            if c < n - 1:
                m.append(i + 1)
            self._moves.append(tuple(m))
        contrib = [0] * (self.ncells * self.ncells)
        for tile in range(1, self.ncells):
            gr, gc = divmod(tile - 1, n)
            for pos in range(self.ncells):
                r, c = divmod(pos, n)
                contrib[tile * self.ncells + pos] = abs(r - gr) + abs(c - gc)
        self._contrib = contrib

    def is_goal(self, state: State) -> bool:
        return state == self.goal

    def expand(self, state: tuple[int, ...]) -> list[tuple[State, float]]:
        blank = state.index(0)
        out = []
        for j in self._moves[blank]:
            lst = list(state)
            lst[blank] = lst[j]
            lst[j] = 0
            out.append((tuple(lst), 1.0))
        return out

    def h(self, state: tuple[int, ...]) -> float:
        contrib = self._contrib
        ncells = self.ncells
        total = 0
        for pos, tile in enumerate(state):
            if tile:
                total += contrib[tile * ncells + pos]
        return float(total)

    def features(self, state: tuple[int, ...]) -> list[Feature]:
        # (position, tile) pairs, blank included; uniquely identify the state.
        return list(enumerate(state))

    def canonical_bytes(self, state: tuple[int, ...]) -> bytes:
        return bytes(state)

    # Hooks used by the hashing strategies.

    def abstraction_features(self, state: tuple[int, ...]) -> list[Feature]:
        """Abstract state that ignores all tiles except 1, 2 and 3."""
        keep = []
        for pos, tile in enumerate(state):
            if tile in (1, 2, 3):
                keep.append((pos, tile))
        return keep

    def default_projection(self) -> dict[Feature, Feature]:
        """Project (position, tile) onto (row-pair block, tile)."""
        proj = {}
        for pos in range(self.ncells):
            block = (pos // self.n) // 2
            for tile in range(self.ncells):
                proj[(pos, tile)] = ("rp", block, tile)
        return proj


def goal_state(n: int) -> tuple[int, ...]:
    return tuple(range(1, n * n)) + (0,)


def is_solvable(state: tuple[int, ...], n: int) -> bool:
    """Parity test relative to the tiles-in-order, blank-last goal.

    Odd width: inversion count must be even. Even width: inversions plus the
    blank's row counted from the bottom must be odd.
    """
    arr = [t for t in state if t]
    inv = 0
    for i in range(len(arr)):
        ai = arr[i]
        for j in range(i + 1, len(arr)):
            if ai > arr[j]:
                inv += 1
    if n % 2 == 1:
        return inv % 2 == 0
    blank_row_from_bottom = n - state.index(0) // n
    return (inv + blank_row_from_bottom) % 2 == 1


def random_solvable(n: int, seed: int | random.Random) -> tuple[int, ...]:
    """Uniformly random state from the solvable half of the n*n space.

    A uniform permutation lands in either parity class with probability 1/2;
    swapping the tiles 1 and 2 maps the unsolvable class bijectively onto the
    solvable one, so the result stays uniform.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    perm = list(range(n * n))
    rng.shuffle(perm)
    state = tuple(perm)
    if not is_solvable(state, n):
        i, j = state.index(1), state.index(2)
        lst = list(state)
        lst[i], lst[j] = lst[j], lst[i]
        state = tuple(lst)
    return state


def random_scramble(n: int, depth: int, seed: int | random.Random) -> tuple[int, ...]:
    """Scramble the goal by `depth` random blank moves (no immediate undo)."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    puzzle = TilePuzzle(goal_state(n))
    state = puzzle.goal
    prev = None
    for _ in range(depth):
        succs = [s for s, _ in puzzle.expand(state) if s != prev]
        prev = state
        state = rng.choice(succs)
    return state


def state_count(n: int) -> int:
    """Number of reachable configurations: (n*n)! / 2."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return math.factorial(n * n) // 2
