"""Direct Shapley computation and executable PO / ETP / EMP checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import NamedTuple, Sequence

from .equivalence import players_equivalent
from .errors import GameError, GuardExceeded
from .games import Allocation, Game, same_marginal

SHAPLEY_MAX_PLAYERS = 12
ORACLE_MAX_PLAYERS = 10


def shapley_coefficient(s: int, n: int) -> Fraction:
    """Weight ``s! (n - s - 1)! / n!`` of a coalition of size ``s``."""
    return Fraction(factorial(s) * factorial(n - s - 1), factorial(n))


def shapley(v: Game, max_players: int = SHAPLEY_MAX_PLAYERS) -> Allocation:
    """Shapley value by the subset formula, exactly."""
    n = v.n
    if n > max_players:
        raise GuardExceeded(f"shapley: n = {n} exceeds guard {max_players}")
    coef = [shapley_coefficient(s, n) for s in range(n)]
    t = v.nums
    out = []
    for b in range(n):
        bit = 1 << b
        total = Fraction(0)
        for S in range(1 << n):
            if not S & bit:
                total += coef[bin(S).count("1")] * (t[S | bit] - t[S])
        out.append(total / v.den)
    return tuple(out)


def shapley_permutation_oracle(v: Game, max_players: int = ORACLE_MAX_PLAYERS) -> Allocation:
    """Average marginal vector over all ``n!`` arrival orders."""
    n = v.n
    if n > max_players:
        raise GuardExceeded(f"permutation oracle: n = {n} exceeds guard {max_players}")
    t = v.nums
    sums = [0] * n
    for order in permutations(range(n)):
        S = 0
        for b in order:
            sums[b] += t[S | 1 << b] - t[S]
            S |= 1 << b
    scale = factorial(n) * v.den
    return tuple(Fraction(x, scale) for x in sums)


def _check_length(v: Game, a: Sequence) -> None:
    if len(a) != v.n:
        raise GameError(f"allocation has {len(a)} entries for a {v.n}-player game")


def check_PO(v: Game, a: Sequence[Fraction]) -> bool:
    _check_length(v, a)
    return sum(a, Fraction(0)) == v.worth_of_grand()


def check_ETP(v: Game, a: Sequence[Fraction]) -> bool:
    _check_length(v, a)
    for i in v.players:
        for j in range(i + 1, v.n + 1):
            if a[i - 1] != a[j - 1] and players_equivalent(v, i, j):
                return False
    return True


class EmpCheck(NamedTuple):
    holds: bool
    applicable: bool

    def __bool__(self) -> bool:
        return self.holds


def check_EMP_pair(v: Game, w: Game, i: int, av: Sequence[Fraction], aw: Sequence[Fraction]) -> EmpCheck:
    """EMP for one player across two games.

    When ``v'_i != w'_i`` the implication holds vacuously and the result is
    ``EmpCheck(True, applicable=False)``.
    """
    if v.n != w.n:
        raise GameError("games have different player counts")
    _check_length(v, av)
    _check_length(w, aw)
    if not same_marginal(v, w, i):
        return EmpCheck(True, False)
    return EmpCheck(av[i - 1] == aw[i - 1], True)


@dataclass
class SolutionTable:
    """A solution restricted to a finite list of games: one row per game."""

    games: list[Game]
    rows: dict[int, Allocation] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for idx, row in self.rows.items():
            if len(row) != self.games[idx].n:
                raise GameError(f"row {idx} has {len(row)} entries for a {self.games[idx].n}-player game")

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        g, player = key
        return self.rows[g][player - 1]

    def satisfies_axioms(self) -> bool:
        """PO and ETP on every row, EMP across every pair of rows."""
        for idx, row in self.rows.items():
            if not (check_PO(self.games[idx], row) and check_ETP(self.games[idx], row)):
                return False
        idxs = sorted(self.rows)
        for a in idxs:
            for b in idxs:
                if a < b:
                    v, w = self.games[a], self.games[b]
                    for i in v.players:
                        if not check_EMP_pair(v, w, i, self.rows[a], self.rows[b]).holds:
                            return False
        return True
