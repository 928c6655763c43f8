"""Deriving the Shapley value from PO, ETP and EMP alone.

:func:`axiomatic_shapley` never evaluates the Shapley formula.  It builds a
chain of auxiliary games in which ever larger groups of players are
interchangeable, pins payoffs in a fully symmetric game by efficiency and
equal treatment, and carries each player's payoff back along the chain
through games where that player's marginal function is unchanged.  Every
inference is logged as a :class:`DerivationStep`; a
:class:`DerivationTrace` can be replayed and re-verified independently.

The module also checks closedness and the hypotheses of the
characterisation theorem on finite game collections, and solves the
PO/ETP/EMP linear system over such a collection exactly.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

from .classification import GameClass, is_member
from .constructions import (
    LEMMA4_CLASSES,
    LEMMA5_MIRROR,
    ClosureTarget,
    closure_construct,
    lemma4_w,
    lemma4_z,
    lemma5_pipeline,
)
from .equivalence import equivalence_classes, is_equivalence_class, players_equivalent
from .errors import GameError, GuardExceeded, PreconditionError, VerificationError
from .games import (
    Allocation,
    CoalitionLike,
    Game,
    as_mask,
    format_allocation,
    format_coalition,
    format_rational,
    members,
    player_bit,
    same_marginal,
    to_paper_order,
)
from .linalg import solve_exact
from .shapley import SolutionTable

ENGINE_MAX_PLAYERS = 6

# How the closed subclass is quantified: chosen once for each (game, player
# k) pair and shared by every auxiliary game z(i), i != k.
READING = "closed class B fixed per (v, k) and shared by all z(i), i != k"


class ClassSpec(enum.Enum):
    ALL_GAMES = "all-games"
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
    def parse(cls, text: str) -> "ClassSpec":
        key = text.strip().lower().replace("_", "-")
        for c in cls:
            if c.value == key:
                return c
        raise GameError(f"unknown class {text!r}")

    @property
    def game_class(self) -> Optional[GameClass]:
        return None if self is ClassSpec.ALL_GAMES else GameClass(self.value)

    @property
    def route(self) -> str:
        """``"direct"``, ``"lemma4"`` or ``"lemma5"``."""
        if self in _DIRECT:
            return "direct"
        if self.game_class in LEMMA4_CLASSES:
            return "lemma4"
        if self.game_class in LEMMA5_MIRROR:
            return "lemma5"
        raise AssertionError(f"no route for {self}")  # pragma: no cover

    @property
    def target(self) -> Optional[ClosureTarget]:
        return _DIRECT.get(self)

    def __str__(self) -> str:
        return self.value


_DIRECT = {
    ClassSpec.ALL_GAMES: ClosureTarget.UNRESTRICTED,
    ClassSpec.ADDITIVE: ClosureTarget.ADDITIVE,
    ClassSpec.STRICTLY_CONVEX: ClosureTarget.STRICTLY_CONVEX,
    ClassSpec.STRICTLY_CONCAVE: ClosureTarget.STRICTLY_CONCAVE,
}


# -- traces -----------------------------------------------------------------

class StepKind(enum.Enum):
    CONSTRUCT = "construct"
    EMP_TRANSFER = "emp-transfer"
    ETP_PO_RESOLVE = "etp-po-resolve"


@dataclass(frozen=True)
class DerivationStep:
    """One inference.

    ``CONSTRUCT``: ``game`` was built from ``source`` keeping the marginal
    function of ``players[0]``.  ``EMP_TRANSFER``: the payoff of
    ``players[0]`` in ``source`` is copied to ``game``.
    ``ETP_PO_RESOLVE``: the members ``players`` of an equivalence class of
    ``game`` split what the other players leave of the grand coalition.
    """

    kind: StepKind
    game: int
    source: Optional[int]
    players: tuple[int, ...]
    payoffs: tuple[tuple[int, Fraction], ...]
    justification: str


@dataclass
class DerivationTrace:
    games: list[Game]
    steps: list[DerivationStep]
    root: int
    allocation: Allocation
    reading: str = READING
    stats: dict = field(default_factory=dict)

    def replay(self) -> Allocation:
        """Re-run every step from scratch, re-checking its side conditions."""
        known: dict[int, dict[int, Fraction]] = {}
        for no, step in enumerate(self.steps, 1):
            g = self.games[step.game]
            if step.kind is StepKind.CONSTRUCT:
                p = step.players[0]
                if not same_marginal(g, self.games[step.source], p):
                    raise VerificationError(f"step {no}: construction changed player {p}'s marginal")
            elif step.kind is StepKind.EMP_TRANSFER:
                p = step.players[0]
                src = known.get(step.source, {})
                if p not in src:
                    raise VerificationError(f"step {no}: source payoff of player {p} unresolved")
                if not same_marginal(g, self.games[step.source], p):
                    raise VerificationError(f"step {no}: marginals of player {p} differ")
                if src[p] != dict(step.payoffs)[p]:
                    raise VerificationError(f"step {no}: recorded payoff disagrees with replay")
                known.setdefault(step.game, {})[p] = src[p]
            else:
                C = step.players
                if not is_equivalence_class(g, C):
                    raise VerificationError(f"step {no}: {C} is not an equivalence class")
                have = known.get(step.game, {})
                rest = [p for p in g.players if p not in C]
                if any(p not in have for p in rest):
                    raise VerificationError(f"step {no}: out-of-class payoffs unresolved")
                share = (g.worth_of_grand() - sum((have[p] for p in rest), Fraction(0))) / len(C)
                recorded = dict(step.payoffs)
                if any(recorded[p] != share for p in C):
                    raise VerificationError(f"step {no}: recorded class payoff disagrees with replay")
                known.setdefault(step.game, {}).update({p: share for p in C})
        root = known.get(self.root, {})
        n = self.games[self.root].n
        if len(root) != n:
            raise VerificationError("trace leaves root payoffs unresolved")
        out = tuple(root[p] for p in range(1, n + 1))
        if out != tuple(self.allocation):
            raise VerificationError("replayed allocation differs from the recorded one")
        return out

    def render(self) -> str:
        lines = [f"derivation  [{self.reading}]", "games:"]
        for idx, g in enumerate(self.games):
            vec = ", ".join(format_rational(x) for x in to_paper_order(g))
            lines.append(f"  G{idx} = ({vec})")
        lines.append("steps:")
        for no, s in enumerate(self.steps, 1):
            if s.kind is StepKind.CONSTRUCT:
                body = f"G{s.game} from G{s.source}, player {s.players[0]}'s marginal kept ({s.justification})"
            elif s.kind is StepKind.EMP_TRANSFER:
                p, val = s.payoffs[0]
                body = f"psi_{p}(G{s.game}) = psi_{p}(G{s.source}) = {format_rational(val)}"
            else:
                C = "{" + ",".join(map(str, s.players)) + "}"
                val = format_rational(s.payoffs[0][1])
                body = f"G{s.game}: class {C} gets {val} each ({s.justification})"
            lines.append(f"  {no:3d}. {s.kind.value:<15} {body}")
        lines.append(f"allocation: {format_allocation(self.allocation)}")
        lines.append(
            "stats: " + ", ".join(f"{k}={v}" for k, v in sorted(self.stats.items()))
        )
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "reading": self.reading,
            "root": self.root,
            "games": [[format_rational(x) for x in to_paper_order(g)] for g in self.games],
            "steps": [
                {
                    "kind": s.kind.value,
                    "game": s.game,
                    "source": s.source,
                    "players": list(s.players),
                    "payoffs": {str(p): format_rational(x) for p, x in s.payoffs},
                    "justification": s.justification,
                }
                for s in self.steps
            ],
            "allocation": [format_rational(x) for x in self.allocation],
            "stats": dict(self.stats),
        }


# -- derivation -------------------------------------------------------------

class _Deriver:
    def __init__(self, seed: Optional[int]):
        self.rng = random.Random(seed) if seed is not None else None
        self.games: list[Game] = []
        self.index: dict[Game, int] = {}
        self.known: dict[int, dict[int, Fraction]] = {}
        self.memo: dict[Game, Allocation] = {}
        self.steps: list[DerivationStep] = []
        self.stats = {"games": 0, "constructions": 0, "memo_hits": 0, "max_depth": 0}

    def order(self, players: Sequence[int]) -> list[int]:
        out = list(players)
        if self.rng is not None:
            self.rng.shuffle(out)
        return out

    def register(self, g: Game) -> int:
        idx = self.index.get(g)
        if idx is None:
            idx = len(self.games)
            self.games.append(g)
            self.index[g] = idx
            self.stats["games"] += 1
        return idx

    def construct(self, built: Game, source: int, player: int, why: str) -> int:
        idx = self.register(built)
        self.stats["constructions"] += 1
        self.steps.append(DerivationStep(StepKind.CONSTRUCT, idx, source, (player,), (), why))
        return idx

    def transfer(self, target: int, source: int, player: int) -> None:
        value = self.known[source][player]
        if not same_marginal(self.games[target], self.games[source], player):
            raise VerificationError(f"EMP transfer for player {player} between games with different marginals")
        self.known.setdefault(target, {})[player] = value
        self.steps.append(
            DerivationStep(StepKind.EMP_TRANSFER, target, source, (player,), ((player, value),), "EMP")
        )

    def resolve(self, idx: int, C: int) -> None:
        g = self.games[idx]
        have = self.known.setdefault(idx, {})
        inside = members(C)
        rest = [p for p in g.players if not player_bit(p, g.n) & C]
        missing = [p for p in rest if p not in have]
        if missing:
            raise VerificationError(f"payoffs of players {missing} unresolved before ETP/PO")
        share = (g.worth_of_grand() - sum((have[p] for p in rest), Fraction(0))) / len(inside)
        for p in inside:
            have[p] = share
        why = "ETP+PO" if len(inside) > 1 else "PO"
        self.steps.append(
            DerivationStep(StepKind.ETP_PO_RESOLVE, idx, None, tuple(inside), tuple((p, share) for p in inside), why)
        )
        self.memo[g] = tuple(have[p] for p in g.players)

    def derive(self, z: Game, C: int, target: ClosureTarget, depth: int) -> Allocation:
        if z in self.memo:
            self.stats["memo_hits"] += 1
            return self.memo[z]
        self.stats["max_depth"] = max(self.stats["max_depth"], depth)
        zi = self.register(z)
        for p in self.order(members(z.grand & ~C)):
            w = closure_construct(z, C, p, target)
            wi = self.construct(w, zi, p, f"grow {format_coalition(C)} by {p}, {target.value}")
            self.derive(w, C | player_bit(p, z.n), target, depth + 1)
            if z in self.memo:  # a nested chain met z again and settled it
                return self.memo[z]
            self.transfer(zi, wi, p)
        self.resolve(zi, C)
        return self.memo[z]

    def trace(self, root: int) -> DerivationTrace:
        alloc = self.memo.get(self.games[root])
        if alloc is None:
            g = self.games[root]
            alloc = tuple(self.known[root][p] for p in g.players)
        return DerivationTrace(list(self.games), list(self.steps), root, alloc, READING, dict(self.stats))


def _guard(v: Game, max_players: int) -> None:
    if v.n > max_players:
        raise GuardExceeded(f"derivation: n = {v.n} exceeds guard {max_players}")


def derive_on_class(
    z: Game,
    class_members: CoalitionLike,
    target: ClosureTarget,
    seed: Optional[int] = None,
    max_players: int = ENGINE_MAX_PLAYERS,
) -> tuple[Allocation, DerivationTrace]:
    """Derive every payoff of ``z`` starting from the equivalence class ``class_members``.

    Each outside player ``p`` is settled in a closure game where the class
    has grown by ``p`` (recursively, until the class is everybody) and
    carried back by EMP; the class members then share the remainder by
    ETP and PO.  ``seed`` shuffles the order in which outside players are
    taken.
    """
    _guard(z, max_players)
    C = as_mask(class_members, z.n)
    if C == 0:
        raise PreconditionError("the starting class must be nonempty")
    if not is_equivalence_class(z, C):
        raise PreconditionError(f"{format_coalition(C)} is not an equivalence class")
    cls = target.game_class
    if cls is not None and not is_member(z, cls):
        raise PreconditionError(f"game is not {cls}")
    d = _Deriver(seed)
    alloc = d.derive(z, C, target, 0)
    return alloc, d.trace(d.index[z])


def axiomatic_shapley(
    v: Game,
    spec: ClassSpec = ClassSpec.ALL_GAMES,
    seed: Optional[int] = None,
    max_players: int = ENGINE_MAX_PLAYERS,
) -> tuple[Allocation, DerivationTrace]:
    """Payoffs forced on ``v`` by PO, ETP and EMP within the class ``spec``.

    Closed classes (all games, additive, strictly convex, strictly concave)
    chain directly from a singleton class of ``v``.  For the other classes
    each player ``k`` is handled through a big-M companion ``w`` of ``v``
    (same marginal function for ``k``) whose other players are settled in
    strictly convex (or, on the subadditive side, strictly concave) games.
    """
    _guard(v, max_players)
    cls = spec.game_class
    if cls is not None and not is_member(v, cls):
        raise PreconditionError(f"game is not {cls}")
    d = _Deriver(seed)
    if spec.route == "direct":
        root = d.order(v.players)[0]
        d.derive(v, player_bit(root, v.n), spec.target, 0)
        return d.memo[v], d.trace(d.index[v])

    vi = d.register(v)
    for k in d.order(v.players):
        if spec.route == "lemma4":
            w = lemma4_w(v, k, cls)

            def z_of(i: int, w: Game = w) -> Game:
                return lemma4_z(w, i)

            inner = ClosureTarget.STRICTLY_CONVEX
        else:
            w, z_of = lemma5_pipeline(v, k, cls)
            inner = ClosureTarget.STRICTLY_CONCAVE
        wi = d.construct(w, vi, k, f"big-M companion for player {k}, {spec.route}")
        if w not in d.memo:
            for i in d.order([p for p in v.players if p != k]):
                z = z_of(i)
                zi = d.construct(z, wi, i, f"{inner.value} game for player {i}")
                d.derive(z, player_bit(i, v.n), inner, 1)
                d.transfer(wi, zi, i)
            d.resolve(wi, player_bit(k, v.n))
        else:
            d.stats["memo_hits"] += 1
        d.transfer(vi, wi, k)
    alloc = tuple(d.known[vi][p] for p in v.players)
    d.memo[v] = alloc
    return alloc, d.trace(vi)


# -- finite collections -----------------------------------------------------

def _common_n(A: Sequence[Game]) -> Optional[int]:
    ns = {g.n for g in A}
    if len(ns) > 1:
        raise GameError("games in the collection have different player counts")
    return ns.pop() if ns else None


class ClosureReport(NamedTuple):
    closed: bool
    counterexample: Optional[tuple[Game, int, int]]  # (v, S mask, k)


def check_emp_closed_finite(A: Sequence[Game]) -> ClosureReport:
    """Whether every equivalence class of every member can grow inside ``A``.

    For each ``v`` in ``A``, each equivalence class ``S`` of ``v`` and each
    ``k`` outside ``S`` some ``w`` in ``A`` must have ``S + {k}`` as an
    equivalence class and ``w'_k == v'_k``.  On failure the first violating
    ``(v, S, k)`` is returned (members in given order, ``S`` by ascending
    mask, ``k`` ascending).
    """
    A = list(A)
    _common_n(A)
    classes = [set(equivalence_classes(g)) for g in A]
    for v in A:
        for S in sorted(equivalence_classes(v)):
            for k in v.players:
                kbit = player_bit(k, v.n)
                if S & kbit:
                    continue
                if not any(
                    (S | kbit) in cw and same_marginal(w, v, k) for w, cw in zip(A, classes)
                ):
                    return ClosureReport(False, (v, S, k))
    return ClosureReport(True, None)


class HypothesesReport(NamedTuple):
    holds: bool
    failing: Optional[tuple[int, int]]  # (index of v in A, k)
    witnesses: dict  # (v index, k) -> (B indices, w index, {i: z index})


def check_theorem1_hypotheses_finite(A: Sequence[Game], max_games: int = 12) -> HypothesesReport:
    """Search, for every member ``v`` and player ``k``, for a closed ``B``, ``w`` and ``z(i)``.

    ``B`` must be a closed sub-collection of ``A``, ``w`` in ``A`` must share
    ``k``'s marginal function with ``v``, and for each ``i != k`` some
    ``z(i)`` in ``B`` must share ``i``'s marginal function with ``w``.
    """
    A = list(A)
    if len(A) > max_games:
        raise GuardExceeded(f"{len(A)} games exceed the subset-search guard {max_games}")
    n = _common_n(A)
    if n is None:
        return HypothesesReport(True, None, {})
    m = len(A)
    closed = [
        frozenset(sub)
        for r in range(m + 1)
        for sub in combinations(range(m), r)
        if check_emp_closed_finite([A[j] for j in sub]).closed
    ]
    share = {
        (a, b, i): same_marginal(A[a], A[b], i)
        for a in range(m)
        for b in range(m)
        for i in range(1, n + 1)
    }
    witnesses = {}
    for vi in range(m):
        for k in range(1, n + 1):
            found = None
            for B in closed:
                for wi in range(m):
                    if not share[(wi, vi, k)]:
                        continue
                    zs = {}
                    for i in range(1, n + 1):
                        if i == k:
                            continue
                        zi = next((b for b in sorted(B) if share[(b, wi, i)]), None)
                        if zi is None:
                            break
                        zs[i] = zi
                    else:
                        found = (tuple(sorted(B)), wi, zs)
                        break
                if found:
                    break
            if found is None:
                return HypothesesReport(False, (vi, k), witnesses)
            witnesses[(vi, k)] = found
    return HypothesesReport(True, None, witnesses)


class AxiomSystemResult(NamedTuple):
    status: str  # "unique" | "underdetermined" | "infeasible"
    table: Optional[SolutionTable]
    rank: int
    nullity: int


def axiom_equations(A: Sequence[Game]) -> tuple[list[list[Fraction]], list[Fraction], int]:
    """PO, ETP and EMP as linear equations in the unknowns ``psi_i(A[g])``.

    Unknown ``g * n + (i - 1)`` is player ``i``'s payoff in ``A[g]``.
    """
    A = list(A)
    n = _common_n(A) or 0
    cols = n * len(A)
    rows, rhs = [], []

    def eq(coeffs: dict[int, int], b) -> None:
        row = [Fraction(0)] * cols
        for c, x in coeffs.items():
            row[c] = Fraction(x)
        rows.append(row)
        rhs.append(Fraction(b))

    for g, v in enumerate(A):
        eq({g * n + p: 1 for p in range(n)}, v.worth_of_grand())
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if players_equivalent(v, i, j):
                    eq({g * n + i - 1: 1, g * n + j - 1: -1}, 0)
    for g in range(len(A)):
        for h in range(g + 1, len(A)):
            for i in range(1, n + 1):
                if same_marginal(A[g], A[h], i):
                    eq({g * n + i - 1: 1, h * n + i - 1: -1}, 0)
    return rows, rhs, cols


def solve_axiom_system(
    A: Sequence[Game],
    extra: Sequence[tuple[dict[tuple[int, int], object], object]] = (),
) -> AxiomSystemResult:
    """Solve the PO/ETP/EMP system over ``A`` by exact elimination.

    ``extra`` adds constraints ``sum c * psi_i(A[g]) == b`` given as
    ``({(g, i): c, ...}, b)``.
    """
    A = list(A)
    rows, rhs, cols = axiom_equations(A)
    n = A[0].n if A else 0
    for coeffs, b in extra:
        row = [Fraction(0)] * cols
        for (g, i), c in coeffs.items():
            row[g * n + i - 1] = Fraction(c)
        rows.append(row)
        rhs.append(Fraction(b))
    sol = solve_exact(rows, rhs, cols)
    if sol.status != "unique":
        return AxiomSystemResult(sol.status, None, sol.rank, sol.nullity)
    x = sol.solution
    table = SolutionTable(A, {g: tuple(x[g * n:(g + 1) * n]) for g in range(len(A))})
    return AxiomSystemResult("unique", table, sol.rank, 0)
