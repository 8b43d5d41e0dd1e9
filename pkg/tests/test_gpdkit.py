from itertools import combinations

import pytest

from ampletwist import fixtures as fx
from ampletwist.gpdkit import (
    BadComposability,
    BadInverse,
    GroupoidFunctor,
    NotAFunctor,
    check_functor,
    is_bisection,
    search_functor,
    validate_groupoid,
)


def test_fixture_shapes():
    assert (fx.G1().n, len(fx.G1().units)) == (1, 1)
    assert (fx.G2().n, len(fx.G2().units)) == (2, 1)
    assert (fx.G3().n, len(fx.G3().units)) == (2, 2)
    assert (fx.G4().n, len(fx.G4().units)) == (4, 2)
    assert fx.TW2().Sigma.n == 4 and fx.TW1().Sigma.n == 8


def test_tw2_total_group_is_cyclic_of_order_4():
    S = fx.TW2().Sigma
    orders = []
    for g in range(S.n):
        x, k = g, 1
        while x != S.units[0]:
            x, k = S.comp[x][g], k + 1
        orders.append(k)
    assert sorted(orders) == [1, 2, 4, 4]


def test_bad_composability():
    # claims a product of arrows that are not composable
    with pytest.raises(BadComposability):
        validate_groupoid(["x", "y"], [0, 1], [0, 1], [[0, 0], [None, 1]], [0, 1])


def test_bad_inverse():
    with pytest.raises(BadInverse):
        validate_groupoid(["e", "g"], [0, 0], [0, 0], [[0, 1], [1, 1]], [0, 1])


def test_collapse_functor_flags():
    f = check_functor(fx.collapse_G2_G1())
    assert f.is_functor and f.iso_unital and f.surjective and not f.injective


def test_projection_flags():
    f = check_functor(fx.TW1().phi)
    assert f.is_functor and f.iso_unital and f.surjective and not f.injective


def test_not_a_functor():
    G = fx.G2()
    with pytest.raises(NotAFunctor):
        check_functor(GroupoidFunctor(G, G, (1, 0)))


def test_bisections_brute_force():
    G = fx.G4()
    # oracle: every subset of arrows with injective dom and ran
    count = sum(
        1
        for k in range(G.n + 1)
        for U in combinations(range(G.n), k)
        if len({G.dom[g] for g in U}) == k == len({G.ran[g] for g in U})
    )
    assert count == 7
    assert not is_bisection(fx.G2(), [0, 1])


def test_search_functor_finds_swap():
    G = fx.G4()
    # force each unit onto the other unit; the rest is determined
    cands = [[u for u in G.units if u != g] if G.is_unit(g) else list(range(G.n)) for g in range(G.n)]
    F = search_functor(G, G, cands)
    assert F is not None and F.map == fx.swap_G4().map
