"""The player relation ``i ~v j`` and equivalence classes of a game.

Two players are related when their marginal contributions agree on every
coalition containing neither of them.  A coalition is an equivalence class
when its members are pairwise related.
"""

from __future__ import annotations

from typing import NamedTuple

from . import kernels
from .errors import PreconditionError
from .games import CoalitionLike, Game, as_mask, format_coalition, members, player_bit


class Partition(NamedTuple):
    """Disjoint coalitions (masks) covering all players, ordered by least member."""

    blocks: tuple[int, ...]

    def __str__(self) -> str:
        return " ".join(format_coalition(b) for b in self.blocks)


def players_equivalent(v: Game, i: int, j: int) -> bool:
    bi, bj = player_bit(i, v.n), player_bit(j, v.n)
    return kernels.players_equivalent(v, bi, bj)


def is_equivalence_class(v: Game, S: CoalitionLike) -> bool:
    ps = members(as_mask(S, v.n))
    for a in range(len(ps)):
        for b in range(a + 1, len(ps)):
            if not players_equivalent(v, ps[a], ps[b]):
                return False
    return True


def equivalence_classes(v: Game) -> list[int]:
    """Every mask (the empty one included) that is an equivalence class in ``v``."""
    return [S for S in range(1 << v.n) if is_equivalence_class(v, S)]


def finest_partition(v: Game) -> Partition:
    """Blocks of the quotient by ``~v``, built by union-find.

    Transitivity is not assumed: every resulting block is re-checked to be
    pairwise related, and an ``AssertionError`` signals a broken relation.
    """
    parent = list(range(v.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in v.players:
        for j in range(i + 1, v.n + 1):
            if players_equivalent(v, i, j):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    blocks: dict[int, int] = {}
    for i in v.players:
        blocks[find(i)] = blocks.get(find(i), 0) | player_bit(i, v.n)
    out = tuple(blocks[r] for r in sorted(blocks))
    for b in out:
        assert is_equivalence_class(v, b), f"~v is not transitive on {format_coalition(b)}"
    return Partition(out)


def lemma1_value_characterization(v: Game, S: CoalitionLike) -> bool:
    """``v(T) == v(Z)`` for all ``T, Z`` with ``T - S == Z - S`` and ``|T| == |Z|``."""
    return kernels.swap_check(v, as_mask(S, v.n))


def corollary2_check(v: Game, S: CoalitionLike, k: int) -> bool:
    """Player ``k``'s marginal is invariant under equal-size swaps inside ``S``.

    Checks ``v'_k(T) == v'_k(Z)`` for ``T, Z`` avoiding ``k`` with
    ``T - S == Z - S`` and ``|T| == |Z|``.  Raises
    :class:`PreconditionError` unless ``S`` is an equivalence class and
    ``k`` lies outside it.
    """
    mask = as_mask(S, v.n)
    kbit = player_bit(k, v.n)
    if mask & kbit:
        raise PreconditionError(f"player {k} belongs to {format_coalition(mask)}")
    if not is_equivalence_class(v, mask):
        raise PreconditionError(f"{format_coalition(mask)} is not an equivalence class")
    return kernels.corollary2_check(v, mask, kbit)

