"""Golden reproductions of the worked examples, run by ``youngshap examples``.

All games are compiled-in constants in paper order.  Each item compares a
computed value with its expected value; the report passes only if every
item does.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, TextIO

from .classification import GameClass, is_member
from .constructions import ClosureTarget, closure_construct, extend_equivalence_class
from .engine import ClassSpec, axiomatic_shapley, check_theorem1_hypotheses_finite, solve_axiom_system
from .equivalence import finest_partition, is_equivalence_class
from .games import Game, dual, format_allocation, from_paper_order, make_unanimity, to_paper_order, zero_game
from .shapley import shapley, shapley_permutation_oracle

CHAIN_V = (0, 0, 0, 3, 1, 2, 3)
CHAIN_W = (0, 0, 0, 3, 2, 2, 4)
CHAIN_Z = (0, 0, 0, 2, 2, 2, 3)
CHAIN_SHAPLEY = (Fraction(1), Fraction(3, 2), Fraction(1, 2))

FORCED3_V = (0, 0, 10, 50, 0, 0, 20)
FORCED3_W = (10, 10, 10, 10, 10, 10, -20)
FORCED4_V = (0, 0, 0, 10, 51, 51, 51, 51, 51, 51, 62, 62, 62, 62, 103)
FORCED4_W = (10, 10, 10, 10, 61, 61, 61, 61, 61, 61, 72, 72, 72, 72, 113)

SUBADDITIVE_CAVEAT = (4, 4, 4, 4, 4, 4, 7)
SUPERADDITIVE_CAVEAT = (0, 0, 0, 3, 1, 2, 4)

NON_TIGHT_V = (0, 0, 1, 1, 1, 1, 2)
NON_TIGHT_SHAPLEY = (
    (Fraction(0), Fraction(0), Fraction(0)),
    (Fraction(1, 2), Fraction(1, 2), Fraction(0)),
    (Fraction(1, 2), Fraction(1, 2), Fraction(1)),
)

# Regression pin for the exponential fill: strictly convex closure of
# (0,0,0,1,1,1,4) growing {1} by player 2, M = 4.
CONVEX_CLOSURE_V = (0, 0, 0, 1, 1, 1, 4)
CONVEX_CLOSURE_W = (0, 0, 36, 1, 37, 37, 40)


@dataclass
class Item:
    name: str
    expected: object
    compute: Callable[[], object]


def _vec(g: Game) -> tuple[Fraction, ...]:
    return tuple(to_paper_order(g))


def _frac(xs: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


def non_tight_collection() -> list[Game]:
    return [zero_game(3), make_unanimity(3, [1, 2]), from_paper_order(3, NON_TIGHT_V)]


def _chain_derivation() -> tuple:
    v = from_paper_order(3, CHAIN_V)
    alloc, trace = axiomatic_shapley(v, ClassSpec.ALL_GAMES, seed=None)
    games = {tuple(to_paper_order(g)) for g in trace.games}
    return alloc, _frac(CHAIN_W) in games, _frac(CHAIN_Z) in games, trace.replay() == alloc


def _non_tight_report() -> str:
    A = non_tight_collection()
    hyp = check_theorem1_hypotheses_finite(A)
    res = solve_axiom_system(A)
    unique = res.status == "unique" and all(
        res.table.rows[g] == shapley(A[g]) == NON_TIGHT_SHAPLEY[g] for g in range(len(A))
    )
    return (
        f"hypotheses: {'hold' if hyp.holds else 'fail'}, "
        f"characterization: {'unique = Shapley' if unique else res.status}"
    )


def items() -> list[Item]:
    v1 = lambda: from_paper_order(3, CHAIN_V)  # noqa: E731
    w1 = lambda: from_paper_order(3, CHAIN_W)  # noqa: E731
    v3 = lambda: from_paper_order(3, FORCED3_V)  # noqa: E731
    v4 = lambda: from_paper_order(4, FORCED4_V)  # noqa: E731
    G = GameClass
    return [
        Item("chain game: extend {1} by 2", _frac(CHAIN_W),
             lambda: _vec(extend_equivalence_class(v1(), [1], 2))),
        Item("chain game: extend {1,2} by 3", _frac(CHAIN_Z),
             lambda: _vec(extend_equivalence_class(w1(), [1, 2], 3))),
        Item("chain game: superadditive, not convex", (True, False),
             lambda: (is_member(v1(), G.SUPERADDITIVE), is_member(v1(), G.CONVEX))),
        Item("chain game: no two players equivalent", "{1} {2} {3}",
             lambda: str(finest_partition(v1()))),
        Item("chain game: shapley value", CHAIN_SHAPLEY, lambda: shapley(v1())),
        Item("chain game: permutation oracle", CHAIN_SHAPLEY, lambda: shapley_permutation_oracle(v1())),
        Item("chain game: axiomatic derivation passes through w and z", (CHAIN_SHAPLEY, True, True, True),
             _chain_derivation),
        Item("three-player forcing: {1,2} is an equivalence class", True,
             lambda: is_equivalence_class(v3(), [1, 2])),
        Item("three-player forcing: forced extension", _frac(FORCED3_W),
             lambda: _vec(extend_equivalence_class(v3(), [1, 2], 3))),
        Item("three-player forcing: forced extension is not essential", False,
             lambda: is_member(from_paper_order(3, FORCED3_W), G.ESSENTIAL)),
        Item("four-player forcing: {1,2,3} is an equivalence class", True,
             lambda: is_equivalence_class(v4(), [1, 2, 3])),
        Item("four-player forcing: input is strictly superadditive", True,
             lambda: is_member(v4(), G.STRICTLY_SUPERADDITIVE)),
        Item("four-player forcing: forced extension", _frac(FORCED4_W),
             lambda: _vec(extend_equivalence_class(v4(), [1, 2, 3], 4))),
        Item("four-player forcing: forced extension not superadditive, weakly superadditive", (False, True),
             lambda: (is_member(from_paper_order(4, FORCED4_W), G.SUPERADDITIVE),
                      is_member(from_paper_order(4, FORCED4_W), G.WEAKLY_SUPERADDITIVE))),
        Item("caveat: (4,4,4,4,4,4,7) strictly subadditive, dual not weakly superadditive", (True, False),
             lambda: (is_member(from_paper_order(3, SUBADDITIVE_CAVEAT), G.STRICTLY_SUBADDITIVE),
                      is_member(dual(from_paper_order(3, SUBADDITIVE_CAVEAT)), G.WEAKLY_SUPERADDITIVE))),
        Item("caveat: (0,0,0,3,1,2,4) strictly superadditive, dual not weakly subadditive", (True, False),
             lambda: (is_member(from_paper_order(3, SUPERADDITIVE_CAVEAT), G.STRICTLY_SUPERADDITIVE),
                      is_member(dual(from_paper_order(3, SUPERADDITIVE_CAVEAT)), G.WEAKLY_SUBADDITIVE))),
        Item("non-tight class", "hypotheses: fail, characterization: unique = Shapley", _non_tight_report),
        Item("strictly convex closure pin", _frac(CONVEX_CLOSURE_W),
             lambda: _vec(closure_construct(from_paper_order(3, CONVEX_CLOSURE_V), [1], 2,
                                            ClosureTarget.STRICTLY_CONVEX))),
    ]


def _show(x: object) -> str:
    if isinstance(x, tuple) and x and all(isinstance(y, Fraction) for y in x):
        return "(" + format_allocation(x).replace(" ", ",") + ")"
    if isinstance(x, tuple):
        return "(" + ", ".join(_show(y) for y in x) + ")"
    return str(x)


def run_examples(out: TextIO) -> int:
    """Print one PASS/FAIL line per item; return 0 iff all pass."""
    failed = 0
    for it in items():
        try:
            got = it.compute()
        except Exception as exc:  # a broken construction must show up as a failure line
            got = f"{type(exc).__name__}: {exc}"
        if got == it.expected:
            print(f"PASS  {it.name}", file=out)
        else:
            failed += 1
            print(f"FAIL  {it.name}\n      expected {_show(it.expected)}\n      got      {_show(got)}", file=out)
    total = len(items())
    print(f"{total - failed}/{total} passed", file=out)
    return 0 if failed == 0 else 1
