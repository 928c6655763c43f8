"""Exact TU games over bitmask coalitions.

Player ``i`` (1-based, as users see it) lives in bit ``i - 1`` of a coalition
mask.  A :class:`Game` keeps its worths as one integer numerator per mask
over a single positive common denominator, so every predicate in the package
reduces to integer comparisons while the public surface speaks
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import IO, Iterable, Mapping, Sequence, Union

from .errors import GameError, ParseError

MAX_PLAYERS = 20

Rational = Fraction
Allocation = tuple  # tuple[Fraction, ...], one payoff per player
CoalitionLike = Union[int, Iterable[int]]
ValueLike = Union[int, Fraction, str]


# -- coalitions -------------------------------------------------------------

def full_mask(n: int) -> int:
    return (1 << n) - 1


def player_bit(i: int, n: int) -> int:
    if not 1 <= i <= n:
        raise GameError(f"player {i} out of range 1..{n}")
    return 1 << (i - 1)


def as_mask(S: CoalitionLike, n: int) -> int:
    """Coerce a mask or an iterable of 1-based players into a mask."""
    if isinstance(S, int):
        if S < 0 or S >> n:
            raise GameError(f"coalition mask {S} outside 2^{n}")
        return S
    mask = 0
    for i in S:
        mask |= player_bit(int(i), n)
    return mask


def members(mask: int) -> list[int]:
    """1-based players of ``mask``, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def format_coalition(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


def parse_coalition(text: str, n: int) -> int:
    """Parse ``"1,2"`` / ``"{1,2}"`` / ``""`` into a mask."""
    body = text.strip().strip("{}").strip()
    if not body:
        return 0
    try:
        players = [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
    except ValueError as exc:
        raise ParseError(f"bad coalition {text!r}") from exc
    return as_mask(players, n)


@lru_cache(maxsize=None)
def paper_order_masks(n: int) -> tuple[int, ...]:
    """Nonempty masks by size, then lexicographically by sorted players."""
    out = []
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            mask = 0
            for b in combo:
                mask |= 1 << b
            out.append(mask)
    return tuple(out)


# -- rationals --------------------------------------------------------------

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_rational(x: ValueLike) -> Fraction:
    if isinstance(x, bool):
        raise GameError("booleans are not game values")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise GameError(f"unsupported value type {type(x).__name__}; use int, Fraction or 'p/q'")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"not an integer or p/q fraction: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_allocation(a: Sequence[Fraction]) -> str:
    return " ".join(format_rational(x) for x in a)


# -- games ------------------------------------------------------------------

class Game:
    """Immutable TU game on players ``1..n``.

    ``nums[mask] / den`` is the worth of ``mask``; ``nums[0]`` is always 0.
    The representation is normalised (``gcd(den, *nums) == 1``) so equal
    games compare and hash equal.
    """

    __slots__ = ("n", "nums", "den", "_hash", "_fast")

    def __init__(self, n: int, nums: Sequence[int], den: int = 1):
        if not isinstance(n, int) or n < 1:
            raise GameError("a game needs at least one player")
        if n > MAX_PLAYERS:
            raise GameError(f"n = {n} exceeds the supported maximum of {MAX_PLAYERS}")
        if len(nums) != 1 << n:
            raise GameError(f"expected {1 << n} table entries, got {len(nums)}")
        if den <= 0:
            raise GameError("denominator must be positive")
        if nums[0] != 0:
            raise GameError("v(empty) must be 0")
        g = math.gcd(den, *nums)
        if g != 1:
            nums = [x // g for x in nums]
            den //= g
        self.n = n
        self.nums = tuple(nums)
        self.den = den
        self._hash = None
        self._fast = None

    @classmethod
    def from_fractions(cls, n: int, values: Sequence[Fraction]) -> "Game":
        """Build from a full mask-indexed table (index 0 included)."""
        den = math.lcm(*(Fraction(x).denominator for x in values))
        return cls(n, [int(Fraction(x) * den) for x in values], den)

    # access
    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    @property
    def players(self) -> range:
        return range(1, self.n + 1)

    def __getitem__(self, S: CoalitionLike) -> Fraction:
        return Fraction(self.nums[as_mask(S, self.n)], self.den)

    value = __getitem__

    def worth_of_grand(self) -> Fraction:
        return Fraction(self.nums[-1], self.den)

    def marginal(self, i: int, S: CoalitionLike) -> Fraction:
        b = player_bit(i, self.n)
        m = as_mask(S, self.n)
        return Fraction(self.nums[m | b] - self.nums[m], self.den)

    def table(self) -> dict[int, Fraction]:
        return {m: Fraction(self.nums[m], self.den) for m in range(1, 1 << self.n)}

    def fractions(self) -> list[Fraction]:
        return [Fraction(x, self.den) for x in self.nums]

    # arithmetic (used by linearity checks and generators)
    def _combine(self, other: "Game", sign: int) -> "Game":
        if other.n != self.n:
            raise GameError("games have different player counts")
        den = math.lcm(self.den, other.den)
        a, b = den // self.den, den // other.den
        return Game(self.n, [x * a + sign * y * b for x, y in zip(self.nums, other.nums)], den)

    def __add__(self, other: "Game") -> "Game":
        return self._combine(other, 1)

    def __sub__(self, other: "Game") -> "Game":
        return self._combine(other, -1)

    def __neg__(self) -> "Game":
        return Game(self.n, [-x for x in self.nums], self.den)

    def scale(self, c: ValueLike) -> "Game":
        c = to_rational(c)
        return Game(self.n, [x * c.numerator for x in self.nums], self.den * c.denominator)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Game):
            return NotImplemented
        return self.n == other.n and self.den == other.den and self.nums == other.nums

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.den, self.nums))
        return self._hash

    def __repr__(self) -> str:
        return f"Game(n={self.n}, paper=({', '.join(map(format_rational, to_paper_order(self)))}))"


def make_game(n: int, values: Mapping[CoalitionLike, ValueLike]) -> Game:
    """Build a game from a table covering every nonempty coalition.

    Keys may be masks or iterables of 1-based players.  Missing, duplicate or
    extra entries (including the empty coalition) are errors.
    """
    if not isinstance(n, int) or n < 1:
        raise GameError("a game needs at least one player")
    if n > MAX_PLAYERS:
        raise GameError(f"n = {n} exceeds the supported maximum of {MAX_PLAYERS}")
    table: list = [None] * (1 << n)
    table[0] = Fraction(0)
    for key, val in values.items():
        mask = as_mask(key if isinstance(key, int) else tuple(key), n)
        if mask == 0:
            raise GameError("the empty coalition is implicit and must not be supplied")
        if table[mask] is not None:
            raise GameError(f"duplicate entry for {format_coalition(mask)}")
        table[mask] = to_rational(val)
    missing = [m for m in range(1, 1 << n) if table[m] is None]
    if missing:
        raise GameError(
            f"{len(missing)} coalition(s) missing, e.g. {format_coalition(missing[0])}"
        )
    return Game.from_fractions(n, table)


def from_paper_order(n: int, vector: Sequence[ValueLike]) -> Game:
    masks = paper_order_masks(n)
    if len(vector) != len(masks):
        raise GameError(f"paper-order vector for n={n} needs {len(masks)} values, got {len(vector)}")
    table = [Fraction(0)] * (1 << n)
    for m, x in zip(masks, vector):
        table[m] = to_rational(x)
    return Game.from_fractions(n, table)


def to_paper_order(v: Game) -> list[Fraction]:
    return [Fraction(v.nums[m], v.den) for m in paper_order_masks(v.n)]


def from_bitmask_order(n: int, vector: Sequence[ValueLike]) -> Game:
    if len(vector) != (1 << n) - 1:
        raise GameError(f"bitmask-order vector for n={n} needs {(1 << n) - 1} values, got {len(vector)}")
    return Game.from_fractions(n, [Fraction(0)] + [to_rational(x) for x in vector])


def to_bitmask_order(v: Game) -> list[Fraction]:
    return v.fractions()[1:]


def marginal(v: Game, i: int, S: CoalitionLike) -> Fraction:
    """``v(S | {i}) - v(S)``; zero whenever ``i`` is already in ``S``."""
    return v.marginal(i, S)


def same_marginal(v: Game, w: Game, i: int) -> bool:
    """Whether player ``i`` has identical marginal functions in ``v`` and ``w``."""
    if v.n != w.n:
        raise GameError("games have different player counts")
    b = player_bit(i, v.n)
    a, c = v.nums, w.nums
    dv, dw = v.den, w.den
    for S in range(1 << v.n):
        if not S & b and (a[S | b] - a[S]) * dw != (c[S | b] - c[S]) * dv:
            return False
    return True


def dual(v: Game) -> Game:
    """The dual game ``S -> v(N) - v(N \\ S)``."""
    N = v.grand
    top = v.nums[N]
    return Game(v.n, [top - v.nums[N ^ S] for S in range(1 << v.n)], v.den)


def zero_game(n: int) -> Game:
    return Game(n, [0] * (1 << n))


def make_unanimity(n: int, T: CoalitionLike) -> Game:
    T = as_mask(T, n)
    if T == 0:
        raise GameError("unanimity game needs a nonempty carrier")
    return Game(n, [1 if S & T == T else 0 for S in range(1 << n)])


def additive_game(weights: Sequence[ValueLike]) -> Game:
    """``v(S) = sum of weights[i-1] for i in S``."""
    w = [to_rational(x) for x in weights]
    n = len(w)
    table = [sum((w[b] for b in range(n) if S >> b & 1), Fraction(0)) for S in range(1 << n)]
    return Game.from_fractions(n, table)


# -- JSON game files --------------------------------------------------------

def game_to_json(v: Game, order: str = "paper") -> dict:
    if order == "paper":
        vals = to_paper_order(v)
    elif order == "bitmask":
        vals = to_bitmask_order(v)
    else:
        raise GameError(f"unknown order {order!r}")
    return {"players": v.n, "order": order, "values": [format_rational(x) for x in vals]}


def game_from_json(doc: object) -> Game:
    if not isinstance(doc, dict):
        raise ParseError("game file must hold a JSON object")
    try:
        n = doc["players"]
        values = doc["values"]
    except KeyError as exc:
        raise ParseError(f"game file lacks field {exc.args[0]!r}") from None
    order = doc.get("order", "paper")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("'players' must be a positive integer")
    if not isinstance(values, list):
        raise ParseError("'values' must be a list")
    parsed = []
    for x in values:
        if isinstance(x, str):
            parsed.append(parse_rational(x))
        elif isinstance(x, int) and not isinstance(x, bool):
            parsed.append(Fraction(x))
        else:
            raise ParseError(f"value {x!r} is neither an integer nor a 'p/q' string")
    try:
        if order == "paper":
            return from_paper_order(n, parsed)
        if order == "bitmask":
            return from_bitmask_order(n, parsed)
    except GameError as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown order {order!r}")


def load_game(fp: IO[str]) -> Game:
    try:
        doc = json.load(fp)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return game_from_json(doc)


def dump_game(v: Game, fp: IO[str], order: str = "paper") -> None:
    json.dump(game_to_json(v, order), fp)
    fp.write("\n")
