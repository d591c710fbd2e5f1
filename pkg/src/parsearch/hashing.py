"""Work-distribution strategies: state -> 64-bit key -> owner worker.

Available strategies: Zobrist, abstract Zobrist (Zobrist over projected
features), multiplicative, abstraction-based, hyperplane (lattices only),
and random. Keys are 64-bit; duplicate detection always compares full
states, never keys alone.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterable

from parsearch.common import ConfigError
from parsearch.domains.base import Feature, SearchProblem, State, fold_key

MASK64 = 0xFFFFFFFFFFFFFFFF
TWO64 = 1 << 64
GOLDEN_FRAC = (5**0.5 - 1) / 2  # fractional part of the golden ratio

STRATEGY_TOKENS = ("zobrist", "azh", "mult", "abstraction", "hyperplane", "random")


def splitmix64(x: int) -> int:
    """Counter-based 64-bit mixer; the bit-string generator for all tables."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _stable_mix(acc: int, obj) -> int:
    """Mix a feature component into acc, deterministically across runs."""
    if isinstance(obj, bool):
        obj = int(obj)
    if isinstance(obj, int):
        return splitmix64(acc ^ 0xD1 ^ (obj & MASK64))
    if isinstance(obj, str):
        acc = splitmix64(acc ^ 0xD2 ^ len(obj))
        data = obj.encode("utf-8")
        for i in range(0, len(data), 8):
            acc = splitmix64(acc ^ int.from_bytes(data[i : i + 8], "little"))
        return acc
    if isinstance(obj, tuple):
        acc = splitmix64(acc ^ 0xD3 ^ len(obj))
        for item in obj:
            acc = _stable_mix(acc, item)
        return acc
    raise ConfigError(f"feature component {obj!r} has no stable encoding")


class ZobristTable:
    """Feature -> preinitialized 64-bit random bit string.

    Entries are derived deterministically from the seed by a counter-based
    generator, so the table never depends on insertion order. Passing an
    explicit feature universe freezes the table: looking up a feature
    outside it is a configuration error.
    """

    def __init__(self, seed: int = 42, universe: Iterable[Feature] | None = None):
        self.seed = seed
        self._base = splitmix64(seed & MASK64)
        self._cache: dict = {}
        self._frozen = False
        if universe is not None:
            for f in universe:
                self._cache[f] = splitmix64(_stable_mix(self._base, f))
            self._frozen = True

    def bits(self, feature: Feature) -> int:
        entry = self._cache.get(feature)
        if entry is None:
            if self._frozen:
                raise ConfigError(f"unknown feature {feature!r}")
            entry = splitmix64(_stable_mix(self._base, feature))
            self._cache[feature] = entry
        return entry


def zobrist_key(table: ZobristTable, features: Iterable[Feature]) -> int:
    """xor of the table's bit strings over the feature list."""
    key = 0
    for f in features:
        key ^= table.bits(f)
    return key


def zobrist_update(
    key: int,
    removed: Iterable[Feature],
    added: Iterable[Feature],
    table: ZobristTable,
) -> int:
    """Incremental key after a move; equals a full recompute."""
    for f in removed:
        key ^= table.bits(f)
    for f in added:
        key ^= table.bits(f)
    return key


def azh_key(
    table: ZobristTable,
    projection: dict[Feature, Feature] | Callable[[Feature], Feature] | None,
    features: Iterable[Feature],
) -> int:
    """Zobrist key of the projected feature multiset."""
    if projection is None:
        return zobrist_key(table, features)
    key = 0
    if callable(projection):
        for f in features:
            key ^= table.bits(projection(f))
    else:
        for f in features:
            key ^= table.bits(projection[f])
    return key


def mult_owner(kappa: int, p: int, a: float = GOLDEN_FRAC) -> int:
    """floor(p * frac(kappa * a)) computed in 64-bit fixed point.

    a is quantized to 64 fractional bits, after which the product and its
    fractional part are exact for any 64-bit kappa; this avoids the severe
    precision loss of evaluating frac() in floating point.
    """
    if p < 1:
        raise ConfigError("worker count must be >= 1")
    if not 0.0 <= a < 1.0:
        raise ConfigError("multiplier must lie in [0, 1)")
    a_fixed = int(a * TWO64)
    frac_fixed = ((kappa & MASK64) * a_fixed) & MASK64
    return (p * frac_fixed) >> 64


def normalize_thickness(d) -> int | Fraction:
    """Validate a hyperplane thickness: integer >= 1 or a unit fraction."""
    if isinstance(d, str):
        if "/" in d:
            num, den = d.split("/", 1)
            d = Fraction(int(num), int(den))
        else:
            d = Fraction(d)
    if isinstance(d, float):
        d = Fraction(d).limit_denominator(1024)
    if isinstance(d, int):
        d = Fraction(d)
    if not isinstance(d, Fraction):
        raise ConfigError(f"bad hyperplane thickness {d!r}")
    if d >= 1:
        if d.denominator != 1:
            raise ConfigError("thickness >= 1 must be an integer")
        return int(d)
    if d.numerator == 1 and d.denominator >= 2:
        return d
    raise ConfigError("thickness < 1 must be a unit fraction 1/m")


def hyperplane_plane(coords: tuple[int, ...], d, zkey: int) -> int:
    """Plane index of a lattice point for thickness d.

    Integer d: floor(sum(x)/d). Unit-fraction d = 1/m: m*sum(x) + (Z mod m),
    which interleaves m Zobrist-selected sub-planes per coordinate sum.
    """
    d = normalize_thickness(d)
    total = sum(coords)
    if isinstance(d, int):
        return total // d
    m = d.denominator
    return m * total + (zkey % m)


def hyperplane_owner(coords: tuple[int, ...], d, p: int, zkey: int) -> int:
    if p < 1:
        raise ConfigError("worker count must be >= 1")
    return hyperplane_plane(coords, d, zkey) % p


def hyperplane_fanout_bound(n: int, d) -> int:
    """Upper bound floor(n/d + max(1, 1/d)) on distinct successor owners."""
    d = normalize_thickness(d)
    frac = Fraction(d) if not isinstance(d, Fraction) else d
    return int(Fraction(n) / frac + max(Fraction(1), 1 / frac))


# --- strategy objects -------------------------------------------------------


class ZobristStrategy:
    name = "zobrist"
    deterministic = True

    def __init__(self, problem: SearchProblem, seed: int = 42):
        self.problem = problem
        self.table = ZobristTable(seed)
        self._cache: dict = {}

    def key(self, state: State) -> int:
        k = self._cache.get(state)
        if k is None:
            k = zobrist_key(self.table, self.problem.features(state))
            self._cache[state] = k
        return k

    def owner(self, state: State, p: int, rng=None) -> int:
        return self.key(state) % p


class AbstractZobristStrategy:
    """Zobrist over projected features: trades balance for locality."""

    name = "azh"
    deterministic = True

    def __init__(
        self,
        problem: SearchProblem,
        seed: int = 42,
        projection: dict[Feature, Feature] | None = None,
    ):
        self.problem = problem
        self.table = ZobristTable(seed)
        if projection is None and hasattr(problem, "default_projection"):
            projection = problem.default_projection()
        self.projection = projection  # None means identity
        self._cache: dict = {}

    def key(self, state: State) -> int:
        k = self._cache.get(state)
        if k is None:
            k = azh_key(self.table, self.projection, self.problem.features(state))
            self._cache[state] = k
        return k

    def owner(self, state: State, p: int, rng=None) -> int:
        return self.key(state) % p


class MultiplicativeStrategy:
    """Golden-ratio multiplicative hash over a folded state key."""

    name = "mult"
    deterministic = True

    def __init__(self, problem: SearchProblem, a: float = GOLDEN_FRAC):
        self.problem = problem
        self.a = a

    def key(self, state: State) -> int:
        return fold_key(self.problem.canonical_bytes(state))

    def owner(self, state: State, p: int, rng=None) -> int:
        return mult_owner(self.key(state), p, self.a)


class AbstractionStrategy:
    """Owner from the Zobrist key of the state's abstract projection.

    Any two states with the same abstract state share an owner. Domains
    without a defined abstraction fall back to the identity projection,
    which degenerates to plain Zobrist hashing.
    """

    name = "abstraction"
    deterministic = True

    def __init__(self, problem: SearchProblem, seed: int = 42):
        self.problem = problem
        self.table = ZobristTable(seed)
        self._abstract = getattr(problem, "abstraction_features", problem.features)
        self._cache: dict = {}

    def key(self, state: State) -> int:
        k = self._cache.get(state)
        if k is None:
            k = zobrist_key(self.table, self._abstract(state))
            self._cache[state] = k
        return k

    def owner(self, state: State, p: int, rng=None) -> int:
        return self.key(state) % p


class HyperplaneStrategy:
    """Lattice-only owner function bounding each state's successor fan-out."""

    name = "hyperplane"
    deterministic = True

    def __init__(self, problem: SearchProblem, d=1, seed: int = 42):
        initial = problem.initial
        if not (
            isinstance(initial, tuple)
            and all(isinstance(x, int) for x in initial)
        ):
            raise ConfigError(
                "hyperplane strategy requires integer-coordinate states"
            )
        self.problem = problem
        self.d = normalize_thickness(d)
        self.table = ZobristTable(seed)

    def key(self, state: State) -> int:
        return zobrist_key(self.table, self.problem.features(state))

    def owner(self, state: State, p: int, rng=None) -> int:
        return hyperplane_owner(state, self.d, p, self.key(state))


class RandomStrategy:
    """Uniform random owner per send; duplicates may land anywhere."""

    name = "random"
    deterministic = False

    def __init__(self, problem: SearchProblem, seed: int = 42):
        self.problem = problem
        self._fallback = random.Random(seed)

    def key(self, state: State) -> int:
        return fold_key(self.problem.canonical_bytes(state))

    def owner(self, state: State, p: int, rng=None) -> int:
        if p < 1:
            raise ConfigError("worker count must be >= 1")
        return (rng or self._fallback).randrange(p)


def parse_strategy_config(text: str) -> dict[str, str]:
    """Parse 'key = value' lines; '#' starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def make_strategy(
    token: str,
    problem: SearchProblem,
    seed: int = 42,
    config: dict[str, str] | None = None,
):
    """Build a strategy from its CLI token."""
    config = config or {}
    if token == "zobrist":
        return ZobristStrategy(problem, seed)
    if token == "azh":
        return AbstractZobristStrategy(problem, seed)
    if token == "mult":
        a = float(config.get("multiplier", GOLDEN_FRAC))
        return MultiplicativeStrategy(problem, a)
    if token == "abstraction":
        return AbstractionStrategy(problem, seed)
    if token == "hyperplane":
        return HyperplaneStrategy(problem, config.get("d", 1), seed)
    if token == "random":
        return RandomStrategy(problem, seed)
    raise ConfigError(
        f"unknown strategy {token!r}; expected one of {', '.join(STRATEGY_TOKENS)}"
    )
