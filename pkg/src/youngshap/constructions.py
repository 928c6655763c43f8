"""Game constructions that grow an equivalence class by one player.

The central routine, :func:`extend_equivalence_class`, takes a game ``v``,
an equivalence class ``S`` and an outside player ``k`` and returns a game
``w`` in which ``S + {k}`` is an equivalence class and ``k``'s marginal
function is untouched.  Coalitions that avoid ``S + {k}`` are free; a
:class:`FillStrategy` decides their worth.  Closure routes for additive,
strictly convex and strictly concave games, and the big-M pipelines that
move a game of a non-closed class next to a strictly convex (or concave)
one, are built on top.

Every function here verifies its own output and raises
:class:`~youngshap.errors.VerificationError` rather than return a game that
misses its postcondition.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence

from .classification import GameClass, is_member
from .equivalence import is_equivalence_class
from .errors import GameError, PreconditionError, VerificationError
from .games import CoalitionLike, Game, as_mask, dual, format_coalition, player_bit, same_marginal

# Growth base of the exponential fills (worth ~ base ** |T|).
EXPONENT_BASE = 3


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


class FillKind(enum.Enum):
    ZERO = "zero"
    COPY = "copy"
    ADDITIVE = "additive"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class FillStrategy:
    """Worth assigned to coalitions disjoint from the growing class.

    ``ZERO`` and ``COPY`` (keep the source game's worth) need no parameters;
    ``ADDITIVE`` assigns ``constant * |T|``; ``EXPONENTIAL`` assigns
    ``scale * 3 ** |T|`` and records the bound ``M`` it was derived from.
    """

    kind: FillKind
    constant: Optional[Fraction] = None
    M: Optional[Fraction] = None
    scale: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.kind is FillKind.ADDITIVE and self.constant is None:
            raise GameError("additive fill needs a constant")
        if self.kind is FillKind.EXPONENTIAL:
            if self.scale is None or self.scale <= 0:
                raise GameError("exponential fill needs a positive scale")

    @classmethod
    def zero(cls) -> "FillStrategy":
        return cls(FillKind.ZERO)

    @classmethod
    def copy(cls) -> "FillStrategy":
        return cls(FillKind.COPY)

    @classmethod
    def additive(cls, c) -> "FillStrategy":
        return cls(FillKind.ADDITIVE, constant=Fraction(c))

    @classmethod
    def exponential(cls, M, scale) -> "FillStrategy":
        return cls(FillKind.EXPONENTIAL, M=Fraction(M), scale=Fraction(scale))

    def value(self, v: Game, T: int) -> Fraction:
        if self.kind is FillKind.ZERO:
            return Fraction(0)
        if self.kind is FillKind.COPY:
            return Fraction(v.nums[T], v.den)
        size = bin(T).count("1")
        if self.kind is FillKind.ADDITIVE:
            return self.constant * size
        return self.scale * EXPONENT_BASE ** size


class ClosureTarget(enum.Enum):
    UNRESTRICTED = "unrestricted"
    ADDITIVE = "additive"
    STRICTLY_CONVEX = "strictly-convex"
    STRICTLY_CONCAVE = "strictly-concave"

    @property
    def game_class(self) -> Optional[GameClass]:
        return None if self is ClosureTarget.UNRESTRICTED else GameClass(self.value)


LEMMA4_CLASSES = (
    GameClass.ESSENTIAL,
    GameClass.CONVEX,
    GameClass.SUPERADDITIVE,
    GameClass.STRICTLY_SUPERADDITIVE,
    GameClass.WEAKLY_SUPERADDITIVE,
    GameClass.STRICTLY_WEAKLY_SUPERADDITIVE,
    GameClass.MONOTONIC,
    GameClass.STRICTLY_MONOTONIC,
)

# subadditive-side class -> its superadditive-side mirror
LEMMA5_MIRROR = {
    GameClass.WEAKLY_SUBADDITIVE: GameClass.WEAKLY_SUPERADDITIVE,
    GameClass.STRICTLY_WEAKLY_SUBADDITIVE: GameClass.STRICTLY_WEAKLY_SUPERADDITIVE,
    GameClass.SUBADDITIVE: GameClass.SUPERADDITIVE,
    GameClass.STRICTLY_SUBADDITIVE: GameClass.STRICTLY_SUPERADDITIVE,
    GameClass.CONCAVE: GameClass.CONVEX,
}
LEMMA5_CLASSES = tuple(LEMMA5_MIRROR)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def _ensure(cond: bool, msg: str) -> None:
    if not cond:
        raise VerificationError(msg)


def _max_abs_marginal(v: Game, kbit: int) -> int:
    t = v.nums
    return max(abs(t[T | kbit] - t[T]) for T in range(1 << v.n) if not T & kbit)


def choose_M(v: Game, k: int) -> Fraction:
    """``max |v'_k(T)|`` over proper coalitions, plus one."""
    kbit = player_bit(k, v.n)
    return Fraction(_max_abs_marginal(v, kbit), v.den) + 1


# -- equivalence-class extension --------------------------------------------

def _class_value(t: Sequence[int], w: Sequence[int], T: int, order: Sequence[int], K: int, kbit: int) -> int:
    """Worth of a coalition ``T`` meeting ``K = S + {k}``.

    Starts from the (already filled) worth of ``T - K`` and adds ``m =
    |K & T|`` marginals of ``k``, the i-th one taken at ``T - K`` plus the
    first ``i - 1`` class members of ``T`` in ``order``.
    """
    prefix = T & ~K
    acc = w[prefix]
    m = bin(T & K).count("1")
    for i in range(m):
        acc += t[prefix | kbit] - t[prefix]
        if i < len(order):
            prefix |= order[i]
    return acc


def _check_extension_args(v: Game, S: CoalitionLike, k: int) -> tuple[int, int]:
    mask = as_mask(S, v.n)
    kbit = player_bit(k, v.n)
    _require(not mask & kbit, f"player {k} already belongs to {format_coalition(mask)}")
    _require(is_equivalence_class(v, mask), f"{format_coalition(mask)} is not an equivalence class")
    return mask, kbit


def _extend_table(v: Game, S: int, kbit: int, fill: FillStrategy) -> tuple[list[int], list[int], int]:
    """Scaled source table, extended table and their common denominator."""
    n = v.n
    K = S | kbit
    free = {T: fill.value(v, T) for T in range(1, 1 << n) if not T & K}
    for T, x in free.items():
        if not isinstance(x, Fraction):
            raise GameError(f"fill produced a non-rational worth for {format_coalition(T)}")
    den = math.lcm(v.den, *(x.denominator for x in free.values()))
    a = den // v.den
    t = [x * a for x in v.nums]
    w = [0] * (1 << n)
    for T, x in free.items():
        w[T] = x.numerator * (den // x.denominator)
    for T in range(1, 1 << n):
        if T & K:
            w[T] = _class_value(t, w, T, _bits(S & T), K, kbit)
    return t, w, den


def extend_equivalence_class(
    v: Game, S: CoalitionLike, k: int, fill: FillStrategy = FillStrategy.zero()
) -> Game:
    """Grow the equivalence class ``S`` of ``v`` by player ``k``.

    The result ``w`` has ``S + {k}`` as an equivalence class and
    ``w'_k == v'_k``; coalitions disjoint from ``S + {k}`` get their worth
    from ``fill``.  Class members enter the marginal sums in ascending
    player order (the order does not matter, see
    :func:`well_definedness_check`).
    """
    S, kbit = _check_extension_args(v, S, k)
    _, w, den = _extend_table(v, S, kbit, fill)
    out = Game(v.n, w, den)
    _ensure(same_marginal(out, v, k), f"extension changed the marginal function of player {k}")
    _ensure(
        is_equivalence_class(out, S | kbit),
        f"{format_coalition(S | kbit)} is not an equivalence class of the extension",
    )
    return out


def well_definedness_check(
    v: Game,
    S: CoalitionLike,
    k: int,
    orderings: int = 5,
    rng: Optional[random.Random] = None,
    fill: FillStrategy = FillStrategy.zero(),
) -> bool:
    """Recompute every class-touching worth under shuffled member orders.

    Returns True when each of ``orderings`` random orders of ``S & T``
    reproduces the canonical worth for every coalition ``T``.
    """
    S, kbit = _check_extension_args(v, S, k)
    rng = rng or random.Random(0)
    t, w, _ = _extend_table(v, S, kbit, fill)
    K = S | kbit
    for T in range(1, 1 << v.n):
        members = _bits(S & T)
        if not T & K or len(members) < 2:
            continue
        for _ in range(orderings):
            order = members[:]
            rng.shuffle(order)
            if _class_value(t, w, T, order, K, kbit) != w[T]:
                return False
    return True


# -- closure routes ---------------------------------------------------------

def closure_construct(
    v: Game, S: CoalitionLike, k: int, target: ClosureTarget, M: Optional[Fraction] = None
) -> Game:
    """Grow ``S`` by ``k`` without leaving the class named by ``target``.

    ``UNRESTRICTED`` uses the zero fill; ``ADDITIVE`` returns
    ``T -> v'_k(empty) * |T|``; ``STRICTLY_CONVEX`` fills free coalitions
    with ``M * n * 3 ** |T|`` (``M`` defaults to :func:`choose_M`);
    ``STRICTLY_CONCAVE`` runs the convex route on the dual and dualises back.
    """
    mask, kbit = _check_extension_args(v, S, k)
    cls = target.game_class
    if cls is not None:
        _require(is_member(v, cls), f"input game is not {cls}")

    if target is ClosureTarget.UNRESTRICTED:
        return extend_equivalence_class(v, mask, k, FillStrategy.zero())

    if target is ClosureTarget.ADDITIVE:
        c = v.nums[kbit]
        w = Game(v.n, [c * bin(T).count("1") for T in range(1 << v.n)], v.den)
    elif target is ClosureTarget.STRICTLY_CONVEX:
        bound = Fraction(_max_abs_marginal(v, kbit), v.den)
        if M is None:
            M = bound + 1
        _require(Fraction(M) > bound, f"M = {M} does not exceed max |v'_k| = {bound}")
        w = extend_equivalence_class(v, mask, k, FillStrategy.exponential(M, Fraction(M) * v.n))
    else:
        w = dual(closure_construct(dual(v), mask, k, ClosureTarget.STRICTLY_CONVEX, M))

    _ensure(is_member(w, cls), f"closure result is not {cls}")
    _ensure(same_marginal(w, v, k), f"closure changed the marginal function of player {k}")
    _ensure(
        is_equivalence_class(w, mask | kbit),
        f"{format_coalition(mask | kbit)} is not an equivalence class of the closure result",
    )
    return w


# -- big-M pipelines --------------------------------------------------------

def lemma4_fill(v: Game, k: int, M: Optional[Fraction] = None) -> Game:
    """Big-M game keeping ``k``'s marginal function.

    Coalitions without ``k`` are worth ``2 M n 3 ** |T|``; a coalition with
    ``k`` is worth ``w(T - {k}) + v'_k(T - {k})``.  No class is checked.
    """
    n = v.n
    kbit = player_bit(k, n)
    if M is None:
        M = choose_M(v, k)
    M = Fraction(M)
    den = math.lcm(v.den, M.denominator)
    a = den // v.den
    c = 2 * M * n * den  # integral by construction of den
    assert c.denominator == 1
    c = c.numerator
    t = v.nums
    w = [0] * (1 << n)
    for T in range(1, 1 << n):
        if not T & kbit:
            w[T] = c * EXPONENT_BASE ** bin(T).count("1")
    for T in range(1, 1 << n):
        if T & kbit:
            R = T ^ kbit
            w[T] = w[R] + (t[T] - t[R]) * a
    return Game(n, w, den)


def lemma4_w(v: Game, k: int, class_tag: GameClass) -> Game:
    """Big-M companion of ``v`` for player ``k`` that stays in ``class_tag``."""
    _require(class_tag in LEMMA4_CLASSES, f"{class_tag} is not handled by the big-M route")
    _require(is_member(v, class_tag), f"input game is not {class_tag}")
    w = lemma4_fill(v, k)
    _ensure(same_marginal(w, v, k), f"big-M game changed the marginal function of player {k}")
    _ensure(is_member(w, class_tag), f"big-M game left the class {class_tag}")
    return w


def lemma4_z(w: Game, i: int) -> Game:
    """Strictly convex game sharing player ``i``'s marginal function with ``w``."""
    z = lemma4_fill(w, i)
    _ensure(same_marginal(z, w, i), f"z changed the marginal function of player {i}")
    _ensure(is_member(z, GameClass.STRICTLY_CONVEX), f"z({i}) is not strictly convex")
    return z


class Lemma5Output(NamedTuple):
    w: Game
    z_builder: Callable[[int], Game]


def lemma5_pipeline(v: Game, k: int, class_tag: GameClass) -> Lemma5Output:
    """Subadditive-side pipeline: dualise, apply the big-M fill, dualise back.

    ``w`` keeps ``k``'s marginal function and stays in ``class_tag``;
    ``z_builder(i)`` returns a strictly concave game sharing ``i``'s
    marginal function with ``w``.  The dual of ``v`` is not required to lie
    in the mirrored class (it often does not); only the final games are
    checked.
    """
    _require(class_tag in LEMMA5_MIRROR, f"{class_tag} is not handled by the dual route")
    _require(is_member(v, class_tag), f"input game is not {class_tag}")
    base = lemma4_fill(dual(v), k)
    w = dual(base)
    _ensure(same_marginal(w, v, k), f"dual big-M game changed the marginal function of player {k}")
    _ensure(is_member(w, class_tag), f"dual big-M game left the class {class_tag}")

    def z_builder(i: int) -> Game:
        z = dual(lemma4_fill(base, i))
        _ensure(same_marginal(z, w, i), f"z changed the marginal function of player {i}")
        _ensure(is_member(z, GameClass.STRICTLY_CONCAVE), f"z({i}) is not strictly concave")
        return z

    return Lemma5Output(w, z_builder)
