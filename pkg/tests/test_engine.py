import dataclasses
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import games
from youngshap import (
    ClassSpec,
    ClosureTarget,
    GameClass,
    GuardExceeded,
    PreconditionError,
    VerificationError,
    additive_game,
    axiomatic_shapley,
    check_emp_closed_finite,
    check_theorem1_hypotheses_finite,
    derive_on_class,
    extend_equivalence_class,
    from_paper_order,
    is_member,
    make_unanimity,
    shapley,
    shapley_permutation_oracle,
    solve_axiom_system,
    to_paper_order,
    zero_game,
)
from youngshap.engine import READING, StepKind, axiom_equations
from youngshap.generators import random_member

EX1_PHI = (Fraction(1), Fraction(3, 2), Fraction(1, 2))


def test_chain_game_all_games(ex1):
    alloc, trace = axiomatic_shapley(ex1)
    assert alloc == EX1_PHI
    vecs = [tuple(to_paper_order(g)) for g in trace.games]
    assert (0, 0, 0, 3, 2, 2, 4) in vecs and (0, 0, 0, 2, 2, 2, 3) in vecs
    assert trace.replay() == alloc
    assert trace.reading == READING
    assert READING in trace.render()
    json.dumps(trace.to_json())


def test_derive_on_class_chain_w():
    w = from_paper_order(3, (0, 0, 0, 3, 2, 2, 4))
    alloc, trace = derive_on_class(w, [1, 2], ClosureTarget.UNRESTRICTED)
    assert alloc == (Fraction(3, 2), Fraction(3, 2), Fraction(1))
    assert [s.kind for s in trace.steps].count(StepKind.EMP_TRANSFER) == 1


def test_derive_on_class_preconditions(ex1):
    with pytest.raises(PreconditionError):
        derive_on_class(ex1, [1, 2], ClosureTarget.UNRESTRICTED)
    with pytest.raises(PreconditionError):
        derive_on_class(ex1, [], ClosureTarget.UNRESTRICTED)
    with pytest.raises(PreconditionError):
        derive_on_class(ex1, [1], ClosureTarget.STRICTLY_CONVEX)


@given(games(max_n=4), st.integers(0, 1000))
def test_all_games_route_matches_shapley(v, seed):
    alloc, trace = axiomatic_shapley(v, seed=seed)
    assert alloc == shapley(v) == shapley_permutation_oracle(v)
    assert trace.replay() == alloc


@given(games(max_n=3))
def test_trace_games_force_a_unique_solution(v):
    _, trace = axiomatic_shapley(v)
    res = solve_axiom_system(trace.games)
    assert res.status == "unique"
    for g, game in enumerate(trace.games):
        assert res.table.rows[g] == shapley(game)


@pytest.mark.parametrize("spec", [ClassSpec.ADDITIVE, ClassSpec.STRICTLY_CONVEX, ClassSpec.STRICTLY_CONCAVE])
def test_closed_class_routes(spec):
    rng = random.Random(5)
    for _ in range(20):
        v = random_member(spec.game_class, rng.choice([2, 3, 4]), rng)
        alloc, trace = axiomatic_shapley(v, spec, seed=rng.randrange(100))
        assert alloc == shapley(v)
        assert trace.replay() == alloc
        for g in trace.games:
            assert is_member(g, spec.game_class)


def test_marginal_routes_on_strictly_convex_and_concave_games():
    rng = random.Random(9)
    for _ in range(10):
        n = rng.choice([2, 3, 4])
        for sign, route in ((1, "lemma4"), (-1, "lemma5")):
            v = random_member(GameClass.STRICTLY_CONVEX, n, rng)
            v = v if sign == 1 else -v
            specs = [s for s in ClassSpec if s.route == route and is_member(v, s.game_class)]
            assert specs
            for spec in specs:
                alloc, trace = axiomatic_shapley(v, spec, seed=rng.randrange(100))
                assert alloc == shapley(v), spec
                assert trace.replay() == alloc


def test_lemma4_route_fails_loudly_on_example1(ex1):
    with pytest.raises(VerificationError, match="strictly convex"):
        axiomatic_shapley(ex1, ClassSpec.SUPERADDITIVE)


def test_engine_preconditions(ex1):
    with pytest.raises(PreconditionError):
        axiomatic_shapley(ex1, ClassSpec.CONVEX)
    with pytest.raises(GuardExceeded):
        axiomatic_shapley(zero_game(7))
    assert axiomatic_shapley(zero_game(7), max_players=7)[0] == (0,) * 7


def test_seed_changes_trace_not_allocation():
    v = from_paper_order(3, (1, 2, 3, 4, 5, 6, 10))
    outs = {axiomatic_shapley(v, seed=s)[0] for s in range(10)}
    traces = {tuple(st.justification for st in axiomatic_shapley(v, seed=s)[1].steps) for s in range(10)}
    assert outs == {shapley(v)}
    assert len(traces) > 1


def test_replay_detects_tampering(ex1):
    alloc, trace = axiomatic_shapley(ex1)
    idx = next(i for i, s in enumerate(trace.steps) if s.kind is StepKind.EMP_TRANSFER)
    s = trace.steps[idx]
    p, val = s.payoffs[0]
    trace.steps[idx] = dataclasses.replace(s, payoffs=((p, val + 1),))
    with pytest.raises(VerificationError):
        trace.replay()


def test_replay_detects_bad_construction(ex1):
    _, trace = axiomatic_shapley(ex1)
    idx = next(i for i, s in enumerate(trace.steps) if s.kind is StepKind.CONSTRUCT)
    g = trace.steps[idx].game
    trace.games[g] = trace.games[g] + make_unanimity(3, [1, 2, 3])
    with pytest.raises(VerificationError):
        trace.replay()


def _non_tight():
    return [zero_game(3), make_unanimity(3, [1, 2]), from_paper_order(3, (0, 0, 1, 1, 1, 1, 2))]


def test_non_tight_class():
    A = _non_tight()
    rep = check_theorem1_hypotheses_finite(A)
    assert not rep.holds
    res = solve_axiom_system(A)
    assert res.status == "unique"
    assert [res.table.rows[g] for g in range(3)] == [shapley(g) for g in A]
    assert res.table.rows[1] == (Fraction(1, 2), Fraction(1, 2), 0)
    assert res.table.satisfies_axioms()


def test_emp_closedness():
    rep = check_emp_closed_finite([zero_game(3), make_unanimity(3, [1, 2])])
    assert not rep.closed
    v, S, k = rep.counterexample
    assert v == make_unanimity(3, [1, 2]) and S == 0b100 and k == 1
    assert check_emp_closed_finite([zero_game(3)]).closed
    assert check_emp_closed_finite([additive_game([2, 2, 2])]).closed
    assert check_emp_closed_finite([]).closed


def test_hypotheses_on_closed_collection():
    rep = check_theorem1_hypotheses_finite([zero_game(3)])
    assert rep.holds and (0, 1) in rep.witnesses
    with pytest.raises(GuardExceeded):
        check_theorem1_hypotheses_finite([zero_game(2)] * 13)


def test_solver_statuses(ex1):
    assert solve_axiom_system([zero_game(3)]).table.rows[0] == (0, 0, 0)
    res = solve_axiom_system([ex1])
    assert res.status == "underdetermined" and res.nullity == 2
    bad = solve_axiom_system([ex1], extra=[({(0, 1): 1}, 0), ({(0, 1): 1}, 1)])
    assert bad.status == "infeasible"


@given(st.lists(games(min_n=3, max_n=3, values=st.integers(-1, 1).map(Fraction)), min_size=1, max_size=4))
def test_shapley_always_solves_the_system(A):
    rows, rhs, cols = axiom_equations(A)
    x = [c for g in A for c in shapley(g)]
    for row, b in zip(rows, rhs):
        assert sum(r * xi for r, xi in zip(row, x)) == b
    res = solve_axiom_system(A)
    assert res.status != "infeasible"
    if res.status == "unique":
        assert all(res.table.rows[g] == shapley(A[g]) for g in range(len(A)))


def test_one_extension_forces_payoffs():
    # N is a class of w, so ETP and PO fix w; EMP carries player 3's payoff
    # back to v, and ETP and PO split the rest inside {1,2}
    v = from_paper_order(3, (0, 0, 10, 50, 0, 0, 20))
    w = extend_equivalence_class(v, [1, 2], 3)
    res = solve_axiom_system([v, w])
    assert res.status == "unique" and res.table.rows[0] == shapley(v)
