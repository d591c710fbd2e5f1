"""The search-problem contract shared by every concrete domain.

A problem exposes an initial state, a goal predicate, a successor function
with nonnegative edge costs, an admissible heuristic, and a feature view of
each state used by the hashing strategies. States must be hashable and
immutable; the feature list of a state identifies it uniquely.
"""

from __future__ import annotations

from typing import Any, Hashable, Iterable, Protocol, runtime_checkable

State = Hashable
Feature = tuple


@runtime_checkable
class SearchProblem(Protocol):
    """Implicit-graph contract consumed by all searchers."""

    initial: State

    def is_goal(self, state: State) -> bool: ...

    def expand(self, state: State) -> list[tuple[State, float]]:
        """Return the finitely many (successor, edge cost >= 0) pairs."""
        ...

    def h(self, state: State) -> float:
        """Admissible heuristic; 0 at every goal state."""
        ...

    def features(self, state: State) -> list[Feature]:
        """Feature ids whose multiset uniquely identifies the state."""
        ...

    def canonical_bytes(self, state: State) -> bytes:
        """Stable byte serialization of the state (feeds key folding)."""
        ...


def fold_key(data: bytes) -> int:
    """Fold a byte string into a 64-bit key by xor'ing 8-byte chunks.

    Deliberately simple; used to derive the multiplicative-hash key from a
    state's canonical bytes.
    """
    key = 0
    for i in range(0, len(data), 8):
        key ^= int.from_bytes(data[i : i + 8], "little")
    return key & 0xFFFFFFFFFFFFFFFF


def validate_path(
    problem: SearchProblem, path: Iterable[State]
) -> float:
    """Re-validate a path edge by edge against expand(); return its cost.

    Raises ValueError if consecutive states are not connected or the last
    state is not a goal.
    """
    path = list(path)
    if not path:
        raise ValueError("empty path")
    if path[0] != problem.initial:
        raise ValueError("path does not start at the initial state")
    cost = 0.0
    for a, b in zip(path, path[1:]):
        for succ, c in problem.expand(a):
            if succ == b:
                cost += c
                break
        else:
            raise ValueError(f"no edge from {a!r} to {b!r}")
    if not problem.is_goal(path[-1]):
        raise ValueError("path does not end in a goal state")
    return cost


def project_features(
    features: list[Feature], projection: dict[Feature, Any] | None
) -> list[Feature]:
    """Apply a many-to-one feature projection (None means identity)."""
    if projection is None:
        return features
    return [projection[f] for f in features]
