"""Domain-level behavior: expansion rules, heuristics, parsers, invariants."""

import math
import random

import pytest

from parsearch.common import ParseError
from parsearch.domains import (
    GridProblem,
    LatticeProblem,
    TilePuzzle,
    goal_state,
    grid_expand,
    is_solvable,
    octile_h,
    parse_grid,
    random_grid,
    random_solvable,
    state_count,
)
from tests.conftest import grid_dijkstra

SQRT2 = math.sqrt(2.0)


class TestTiles:
    def test_corner_blank_has_two_successors(self):
        p = TilePuzzle(goal_state(3))
        state = (0, 1, 2, 3, 4, 5, 6, 7, 8)  # blank in the corner
        assert len(p.expand(state)) == 2

    def test_center_blank_has_four_successors(self):
        p = TilePuzzle(goal_state(3))
        state = (1, 2, 3, 4, 0, 5, 6, 7, 8)
        assert len(p.expand(state)) == 4

    def test_expansion_is_symmetric(self):
        p = TilePuzzle(goal_state(3))
        rng = random.Random(5)
        for _ in range(200):
            s = random_solvable(3, rng)
            for t, cost in p.expand(s):
                assert cost == 1.0
                assert s in [u for u, _ in p.expand(t)]

    def test_manhattan_goal_zero(self):
        p = TilePuzzle(goal_state(3))
        assert p.h(p.goal) == 0.0

    def test_manhattan_one_step(self):
        # tiles 1..7 home, tile 8 one step from home
        p = TilePuzzle(goal_state(3))
        state = (1, 2, 3, 4, 5, 6, 7, 0, 8)
        assert p.h(state) == 1.0

    def test_manhattan_admissible_against_bfs(self, tile3_bfs):
        p = TilePuzzle(goal_state(3))
        rng = random.Random(11)
        for _ in range(1000):
            s = random_solvable(3, rng)
            assert p.h(s) <= tile3_bfs[s]

    def test_manhattan_consistent_exhaustive(self, tile3_bfs):
        p = TilePuzzle(goal_state(3))
        for s in tile3_bfs:
            hs = p.h(s)
            for t, cost in p.expand(s):
                assert hs <= cost + p.h(t) + 1e-12

    def test_random_solvable_all_reachable(self, tile3_bfs):
        rng = random.Random(123)
        for _ in range(10_000):
            assert random_solvable(3, rng) in tile3_bfs

    def test_random_solvable_2x2_in_reachable_set(self):
        puzzle = TilePuzzle(goal_state(2))
        reachable = {puzzle.goal}
        frontier = [puzzle.goal]
        while frontier:
            s = frontier.pop()
            for t, _ in puzzle.expand(s):
                if t not in reachable:
                    reachable.add(t)
                    frontier.append(t)
        assert len(reachable) == 12
        for seed in range(200):
            assert random_solvable(2, seed) in reachable

    def test_random_solvable_deterministic(self):
        assert random_solvable(4, 99) == random_solvable(4, 99)

    def test_solvability_parity_matches_bfs(self, tile3_bfs):
        rng = random.Random(7)
        for _ in range(2000):
            perm = list(range(9))
            rng.shuffle(perm)
            s = tuple(perm)
            assert is_solvable(s, 3) == (s in tile3_bfs)

    def test_state_count(self):
        assert state_count(2) == 12
        assert state_count(3) == 181_440
        assert state_count(5) == 7_755_605_021_665_492_992_000_000

    def test_rejects_bad_state(self):
        with pytest.raises(ValueError):
            TilePuzzle((0, 1, 2))
        with pytest.raises(ValueError):
            TilePuzzle((0, 0, 1, 2))


class TestGrid:
    def test_parse_minimal(self):
        g = parse_grid("2 2 4\n..\n..")
        assert g.width == 2 and g.height == 2 and g.connectivity == 4
        assert not g.blocked

    def test_parse_short_row_reports_line(self):
        with pytest.raises(ParseError) as exc:
            parse_grid("3 2 8\n...\n..")
        assert exc.value.line == 3

    def test_parse_illegal_character(self):
        with pytest.raises(ParseError):
            parse_grid("2 1 8\n.x")

    def test_parse_bad_connectivity(self):
        with pytest.raises(ParseError):
            parse_grid("2 2 6\n..\n..")

    def test_blocked_start_rejected(self):
        g = parse_grid("2 2 8\n#.\n..")
        with pytest.raises(ValueError, match="start blocked"):
            GridProblem(g, (0, 0), (1, 1))

    def test_interior_cell_eight_successors(self):
        g = parse_grid("3 3 8\n...\n...\n...")
        assert len(grid_expand(g, (1, 1))) == 8

    def test_corner_cell_four_connected(self):
        g = parse_grid("3 3 4\n...\n...\n...")
        assert len(grid_expand(g, (0, 0))) == 2

    def test_diagonal_cost(self):
        g = parse_grid("2 2 8\n..\n..")
        costs = {nxt: c for nxt, c in grid_expand(g, (0, 0))}
        assert abs(costs[(1, 1)] - SQRT2) <= 1e-12

    def test_octile_identity(self):
        assert octile_h((3, 4), (3, 4)) == 0.0

    def test_octile_two_diagonals(self):
        assert abs(octile_h((0, 0), (2, 2)) - 2 * SQRT2) <= 1e-12

    def test_octile_admissible_on_random_maps(self):
        for seed in range(100):
            grid = random_grid(16, 16, 0.3, seed)
            goal = (15, 15)
            dist = grid_dijkstra(grid, goal)
            for cell, d in dist.items():
                assert octile_h(cell, goal) <= d + 1e-9

    def test_octile_consistent_exhaustive(self):
        grid = random_grid(16, 16, 0.25, 3)
        goal = (15, 15)
        for x in range(16):
            for y in range(16):
                if not grid.traversable((x, y)):
                    continue
                h0 = octile_h((x, y), goal)
                for nxt, cost in grid_expand(grid, (x, y)):
                    assert h0 <= cost + octile_h(nxt, goal) + 1e-12


class TestLattice:
    def test_interior_point_three_successors(self):
        p = LatticeProblem((3, 3))
        assert len(p.expand((1, 1))) == 3

    def test_goal_corner_no_successors(self):
        p = LatticeProblem((2, 2))
        assert p.expand((2, 2)) == []

    def test_reachable_space_is_a_dag(self):
        # Kahn-style cycle detection over the full n=3, length-4 lattice.
        p = LatticeProblem((4, 4, 4))
        indegree: dict = {}
        states = list(p.all_states())
        for s in states:
            indegree.setdefault(s, 0)
            for t, _ in p.expand(s):
                indegree[t] = indegree.get(t, 0) + 1
        queue = [s for s, d in indegree.items() if d == 0]
        seen = 0
        while queue:
            s = queue.pop()
            seen += 1
            for t, _ in p.expand(s):
                indegree[t] -= 1
                if indegree[t] == 0:
                    queue.append(t)
        assert seen == len(states)

    def test_costs_come_from_table(self):
        costs = {(1, 0): 2.0, (0, 1): 3.0, (1, 1): 5.0}
        p = LatticeProblem((1, 1), costs)
        got = dict(p.expand((0, 0)))
        assert got[(1, 0)] == 2.0 and got[(0, 1)] == 3.0 and got[(1, 1)] == 5.0

    def test_rejects_negative_cost(self):
        with pytest.raises(ValueError):
            LatticeProblem((1, 1), {(1, 0): -1.0, (0, 1): 1.0, (1, 1): 1.0})
