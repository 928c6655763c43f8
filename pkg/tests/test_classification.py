import random

import pytest
from hypothesis import given

from conftest import games, int_games
from oracles import naive_member
from youngshap import (
    Game,
    GameClass,
    classify,
    convexity_via_marginals,
    dual,
    from_paper_order,
    is_essential,
    is_member,
)
from youngshap.classification import STRICT_TO_WEAK
from youngshap.generators import random_member
from youngshap.kernels import available_backends, using_backend

G = GameClass
MIRROR = {
    G.SUPERADDITIVE: G.SUBADDITIVE,
    G.STRICTLY_SUPERADDITIVE: G.STRICTLY_SUBADDITIVE,
    G.WEAKLY_SUPERADDITIVE: G.WEAKLY_SUBADDITIVE,
    G.STRICTLY_WEAKLY_SUPERADDITIVE: G.STRICTLY_WEAKLY_SUBADDITIVE,
    G.CONVEX: G.CONCAVE,
    G.STRICTLY_CONVEX: G.STRICTLY_CONCAVE,
}


def test_chain_game_superadditive_not_convex(ex1):
    assert is_member(ex1, G.SUPERADDITIVE)
    assert not is_member(ex1, G.CONVEX)
    assert classify(ex1) == {G.ESSENTIAL, G.MONOTONIC, G.SUPERADDITIVE, G.WEAKLY_SUPERADDITIVE}


def test_lemma5_game_is_strictly_subadditive():
    assert is_member(from_paper_order(3, [4, 4, 4, 4, 4, 4, 7]), G.STRICTLY_SUBADDITIVE)


def test_forced_games():
    assert not is_member(from_paper_order(3, [10] * 6 + [-20]), G.ESSENTIAL)
    w = from_paper_order(4, [10, 10, 10, 10, 61, 61, 61, 61, 61, 61, 72, 72, 72, 72, 113])
    assert not is_member(w, G.SUPERADDITIVE)
    assert is_member(w, G.WEAKLY_SUPERADDITIVE)


def test_zero_game_classes():
    z = Game(3, [0] * 8)
    cls = classify(z)
    assert {G.ADDITIVE, G.CONVEX, G.CONCAVE, G.SUPERADDITIVE, G.SUBADDITIVE, G.MONOTONIC} <= cls
    assert G.ESSENTIAL not in cls and G.STRICTLY_CONVEX not in cls


def test_essential_helper(ex1):
    assert is_essential(ex1)


def test_parse_tags():
    assert G.parse("strictly_convex") is G.STRICTLY_CONVEX
    assert str(G.WEAKLY_SUBADDITIVE) == "weakly-subadditive"
    with pytest.raises(ValueError):
        G.parse("round")


@pytest.mark.parametrize("backend_name", available_backends())
@given(v=int_games(max_n=4, lo=-2, hi=2))
def test_predicates_match_definitions(backend_name, v):
    with using_backend(backend_name):
        for c in G:
            assert is_member(v, c) == naive_member(v, c.value), c


@given(games(max_n=4))
def test_predicates_match_definitions_on_rationals(v):
    for c in G:
        assert is_member(v, c) == naive_member(v, c.value), c


@given(games(max_n=5))
def test_marginal_characterisation(v):
    assert convexity_via_marginals(v) == is_member(v, G.CONVEX)
    assert convexity_via_marginals(v, strict=True) == is_member(v, G.STRICTLY_CONVEX)
    assert convexity_via_marginals(v, concave=True) == is_member(v, G.CONCAVE)
    assert convexity_via_marginals(v, strict=True, concave=True) == is_member(v, G.STRICTLY_CONCAVE)


@given(games(max_n=4))
def test_strict_implies_weak(v):
    cls = classify(v)
    for strict, weak in STRICT_TO_WEAK.items():
        if strict in cls:
            assert weak in cls


@given(games(max_n=4))
def test_negation_mirrors_classes(v):
    cv, cn = classify(v), classify(-v)
    for a, b in MIRROR.items():
        assert (a in cv) == (b in cn)
        assert (b in cv) == (a in cn)
    assert (G.ADDITIVE in cv) == (G.ADDITIVE in cn)


@given(games(max_n=4))
def test_dual_swaps_convexity(v):
    d = dual(v)
    assert is_member(v, G.CONVEX) == is_member(d, G.CONCAVE)
    assert is_member(v, G.STRICTLY_CONVEX) == is_member(d, G.STRICTLY_CONCAVE)
    assert is_member(v, G.CONCAVE) == is_member(d, G.CONVEX)


@given(games(max_n=3))
def test_weak_and_full_superadditivity_coincide_up_to_three_players(v):
    assert is_member(v, G.SUPERADDITIVE) == is_member(v, G.WEAKLY_SUPERADDITIVE)
    assert is_member(v, G.SUBADDITIVE) == is_member(v, G.WEAKLY_SUBADDITIVE)


def test_weak_and_full_superadditivity_differ_at_four_players():
    w = from_paper_order(4, [10, 10, 10, 10, 61, 61, 61, 61, 61, 61, 72, 72, 72, 72, 113])
    assert is_member(w, G.WEAKLY_SUPERADDITIVE) and not is_member(w, G.SUPERADDITIVE)


@pytest.mark.parametrize("c", list(G))
def test_generators_produce_members(c):
    rng = random.Random(7)
    for n in (2, 3, 4, 5):
        for _ in range(10):
            assert is_member(random_member(c, n, rng), c)


def test_big_entries_fall_back_to_exact_kernel():
    big = 1 << 70
    v = Game(2, [0, big, big, 2 * big + 1])
    assert is_member(v, G.STRICTLY_SUPERADDITIVE)
    assert not is_member(Game(2, [0, big, big, 2 * big - 1]), G.SUPERADDITIVE)
