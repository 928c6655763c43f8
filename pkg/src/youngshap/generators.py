"""Seeded random games, including random members of each game class.

Every generator returns games that are re-checked with the exhaustive
predicate, so a generator bug shows up as an ``AssertionError`` instead of
a silently mislabelled sample.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Optional

from .classification import GameClass, is_member
from .games import Game

DENOMINATORS = (1, 1, 1, 2, 3, 4, 6)


def random_rational(rng: random.Random, lo: int = -10, hi: int = 10) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(DENOMINATORS))


def random_game(n: int, rng: random.Random, lo: int = -10, hi: int = 10) -> Game:
    return Game.from_fractions(n, [Fraction(0)] + [random_rational(rng, lo, hi) for _ in range((1 << n) - 1)])


def integer_game(n: int, rng: random.Random, lo: int = -2, hi: int = 2) -> Game:
    return Game(n, [0] + [rng.randint(lo, hi) for _ in range((1 << n) - 1)])


def _additive_part(n: int, rng: random.Random) -> list[Fraction]:
    a = [random_rational(rng) for _ in range(n)]
    return [sum((a[b] for b in range(n) if S >> b & 1), Fraction(0)) for S in range(1 << n)]


def _supermodular(n: int, rng: random.Random, strict: bool) -> list[Fraction]:
    """Additive part plus nonnegative unanimity terms (plus c|S|^2 if strict)."""
    t = _additive_part(n, rng)
    for T in range(1, 1 << n):
        if bin(T).count("1") >= 2 and rng.random() < 0.4:
            c = Fraction(rng.randint(0, 6), rng.choice(DENOMINATORS))
            for S in range(1 << n):
                if S & T == T:
                    t[S] += c
    if strict:
        c = Fraction(rng.randint(1, 5), rng.choice(DENOMINATORS))
        for S in range(1 << n):
            t[S] += c * bin(S).count("1") ** 2
    return t


def _lift(n: int, rng: random.Random, splits: Callable[[int], list[tuple[int, int]]], strict: bool,
          floor_zero: bool = False) -> list[Fraction]:
    """Raise each worth, by increasing size, to dominate the chosen splits."""
    t = [Fraction(0)] * (1 << n)
    for S in sorted(range(1, 1 << n), key=lambda m: bin(m).count("1")):
        x = random_rational(rng)
        if floor_zero:
            x = abs(x)
        bound = max((t[A] + t[B] for A, B in splits(S)), default=None)
        if bound is not None and x < bound:
            x = bound
        if bound is not None or floor_zero:
            if strict:
                x += Fraction(rng.randint(1, 4), rng.choice(DENOMINATORS))
            elif rng.random() < 0.5:
                x += Fraction(rng.randint(0, 3), rng.choice(DENOMINATORS))
        t[S] = x
    return t


def _all_splits(S: int) -> list[tuple[int, int]]:
    out = []
    A = (S - 1) & S
    while A:
        B = S ^ A
        if A < B:
            out.append((A, B))
        A = (A - 1) & S
    return out


def _single_splits(S: int) -> list[tuple[int, int]]:
    if bin(S).count("1") < 2:
        return []
    out = []
    rest = S
    while rest:
        b = rest & -rest
        out.append((S ^ b, b))
        rest ^= b
    return out


def _subset_splits(S: int) -> list[tuple[int, int]]:
    # monotonicity: v(S) >= v(S - {i}); encoded as a split with the empty set
    out = []
    rest = S
    while rest:
        b = rest & -rest
        out.append((S ^ b, 0))
        rest ^= b
    return out


def _raw_member(c: GameClass, n: int, rng: random.Random) -> list[Fraction]:
    G = GameClass
    if c is G.CONVEX:
        return _supermodular(n, rng, strict=False)
    if c is G.STRICTLY_CONVEX:
        return _supermodular(n, rng, strict=True)
    if c is G.ADDITIVE:
        return _additive_part(n, rng)
    if c is G.SUPERADDITIVE:
        return _lift(n, rng, _all_splits, strict=False)
    if c is G.STRICTLY_SUPERADDITIVE:
        return _lift(n, rng, _all_splits, strict=True)
    if c is G.WEAKLY_SUPERADDITIVE:
        return _lift(n, rng, _single_splits, strict=False)
    if c is G.STRICTLY_WEAKLY_SUPERADDITIVE:
        return _lift(n, rng, _single_splits, strict=True)
    if c is G.MONOTONIC:
        return _lift(n, rng, _subset_splits, strict=False, floor_zero=True)
    if c is G.STRICTLY_MONOTONIC:
        return _lift(n, rng, _subset_splits, strict=True, floor_zero=True)
    if c is G.ESSENTIAL:
        t = [Fraction(0)] + [random_rational(rng) for _ in range((1 << n) - 1)]
        singles = sum(t[1 << b] for b in range(n))
        if t[-1] <= singles:
            t[-1] = singles + Fraction(rng.randint(1, 5), rng.choice(DENOMINATORS))
        return t
    raise ValueError(c)


_MIRROR = {
    GameClass.WEAKLY_SUBADDITIVE: GameClass.WEAKLY_SUPERADDITIVE,
    GameClass.STRICTLY_WEAKLY_SUBADDITIVE: GameClass.STRICTLY_WEAKLY_SUPERADDITIVE,
    GameClass.SUBADDITIVE: GameClass.SUPERADDITIVE,
    GameClass.STRICTLY_SUBADDITIVE: GameClass.STRICTLY_SUPERADDITIVE,
    GameClass.CONCAVE: GameClass.CONVEX,
    GameClass.STRICTLY_CONCAVE: GameClass.STRICTLY_CONVEX,
}


def random_member(c: Optional[GameClass], n: int, rng: random.Random) -> Game:
    """A random game of class ``c`` (any game when ``c`` is None)."""
    if c is None:
        return random_game(n, rng)
    if c is GameClass.ESSENTIAL and n < 2:
        raise ValueError("no one-player game is essential")
    if c in _MIRROR:
        g = -Game.from_fractions(n, _raw_member(_MIRROR[c], n, rng))
    else:
        g = Game.from_fractions(n, _raw_member(c, n, rng))
    assert is_member(g, c), f"generator produced a non-{c} game: {g!r}"
    return g


def random_strictly_convex(n: int, rng: random.Random) -> Game:
    return random_member(GameClass.STRICTLY_CONVEX, n, rng)


def plant_class(v: Game, S: int, rng: random.Random) -> Game:
    """Symmetrise ``v`` so that ``S`` becomes an equivalence class.

    Every coalition's worth is replaced by a random worth shared by all
    coalitions with the same part outside ``S`` and the same number of
    members inside ``S``.
    """
    n = v.n
    shared: dict[tuple[int, int], Fraction] = {}
    table = [Fraction(0)] * (1 << n)
    for T in range(1, 1 << n):
        key = (T & ~S, bin(T & S).count("1"))
        if key not in shared:
            shared[key] = Fraction(v.nums[T], v.den) if key == (T, 0) else random_rational(rng)
        table[T] = shared[key]
    return Game.from_fractions(n, table)
