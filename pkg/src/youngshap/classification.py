"""Membership predicates for the sixteen game classes.

Each predicate is the literal exhaustive quantifier over coalition pairs (or
coalition/player pairs for the weak variants); nothing is inferred from the
implication lattice between classes.
"""

from __future__ import annotations

import enum

from . import kernels
from .errors import GameError
from .games import Game


class GameClass(enum.Enum):
    ESSENTIAL = "essential"
    CONVEX = "convex"
    STRICTLY_CONVEX = "strictly-convex"
    SUPERADDITIVE = "superadditive"
    STRICTLY_SUPERADDITIVE = "strictly-superadditive"
    WEAKLY_SUPERADDITIVE = "weakly-superadditive"
    STRICTLY_WEAKLY_SUPERADDITIVE = "strictly-weakly-superadditive"
    MONOTONIC = "monotonic"
    STRICTLY_MONOTONIC = "strictly-monotonic"
    ADDITIVE = "additive"
    WEAKLY_SUBADDITIVE = "weakly-subadditive"
    STRICTLY_WEAKLY_SUBADDITIVE = "strictly-weakly-subadditive"
    SUBADDITIVE = "subadditive"
    STRICTLY_SUBADDITIVE = "strictly-subadditive"
    CONCAVE = "concave"
    STRICTLY_CONCAVE = "strictly-concave"

    @classmethod
    def parse(cls, text: str) -> "GameClass":
        key = text.strip().lower().replace("_", "-")
        for c in cls:
            if c.value == key:
                return c
        raise GameError(f"unknown game class {text!r}")

    def __str__(self) -> str:
        return self.value


# strict tag -> the non-strict tag it implies
STRICT_TO_WEAK = {
    GameClass.STRICTLY_CONVEX: GameClass.CONVEX,
    GameClass.STRICTLY_SUPERADDITIVE: GameClass.SUPERADDITIVE,
    GameClass.STRICTLY_WEAKLY_SUPERADDITIVE: GameClass.WEAKLY_SUPERADDITIVE,
    GameClass.STRICTLY_MONOTONIC: GameClass.MONOTONIC,
    GameClass.STRICTLY_WEAKLY_SUBADDITIVE: GameClass.WEAKLY_SUBADDITIVE,
    GameClass.STRICTLY_SUBADDITIVE: GameClass.SUBADDITIVE,
    GameClass.STRICTLY_CONCAVE: GameClass.CONCAVE,
}


def is_essential(v: Game) -> bool:
    singles = sum(v.nums[1 << b] for b in range(v.n))
    return v.nums[v.grand] > singles


def is_member(v: Game, c: GameClass) -> bool:
    G = GameClass
    k = kernels
    if c is G.ESSENTIAL:
        return is_essential(v)
    if c is G.CONVEX:
        return k.check_convex(v, k.LE, False)
    if c is G.STRICTLY_CONVEX:
        return k.check_convex(v, k.LT, True)
    if c is G.CONCAVE:
        return k.check_convex(v, k.GE, False)
    if c is G.STRICTLY_CONCAVE:
        return k.check_convex(v, k.GT, True)
    if c is G.SUPERADDITIVE:
        return k.check_disjoint(v, k.LE, False)
    if c is G.STRICTLY_SUPERADDITIVE:
        return k.check_disjoint(v, k.LT, True)
    if c is G.SUBADDITIVE:
        return k.check_disjoint(v, k.GE, False)
    if c is G.STRICTLY_SUBADDITIVE:
        return k.check_disjoint(v, k.GT, True)
    if c is G.ADDITIVE:
        return k.check_disjoint(v, k.EQ, False)
    if c is G.WEAKLY_SUPERADDITIVE:
        return k.check_weak(v, k.LE, False)
    if c is G.STRICTLY_WEAKLY_SUPERADDITIVE:
        return k.check_weak(v, k.LT, True)
    if c is G.WEAKLY_SUBADDITIVE:
        return k.check_weak(v, k.GE, False)
    if c is G.STRICTLY_WEAKLY_SUBADDITIVE:
        return k.check_weak(v, k.GT, True)
    if c is G.MONOTONIC:
        return k.check_monotone(v, False)
    if c is G.STRICTLY_MONOTONIC:
        return k.check_monotone(v, True)
    raise GameError(f"unknown class {c!r}")


def classify(v: Game) -> frozenset[GameClass]:
    return frozenset(c for c in GameClass if is_member(v, c))


def convexity_via_marginals(v: Game, strict: bool = False, concave: bool = False) -> bool:
    """Marginal-contribution form of (strict) convexity or concavity.

    Convex: ``v'_i(Z) <= v'_i(T)`` for every player ``i`` and every
    ``Z`` strictly inside ``T`` within ``N - {i}``; strict uses ``<``,
    concave flips the comparison.
    """
    if concave:
        rel = kernels.GT if strict else kernels.GE
    else:
        rel = kernels.LT if strict else kernels.LE
    return kernels.check_marginal_order(v, rel)
