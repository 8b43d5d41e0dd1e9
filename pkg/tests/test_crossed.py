from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from ampletwist import fixtures as fx
from ampletwist.crossed import (
    NotCovariant,
    build_action,
    build_crossed_product,
    canonical_covariant,
    check_covariant,
    check_embedded_module,
    check_tau_rho,
    cocycle_vectors,
    normal_form,
    same_crossed_iso,
    tau,
    tilde_to_vector,
    trivial_cocycle_vectors,
    unit_sheaf,
    universal_extend,
)
from ampletwist.duality import gamma_c
from ampletwist.errors import SizeLimitExceeded
from ampletwist.lausch import coboundary, iter_cochains
from ampletwist.ringkit import PrimeField, units_and_embedding
from ampletwist.twistkit import module_tilde_A, twist_class_cocycle

F5 = PrimeField(5)


def twisted(T, F=F5):
    tc = twist_class_cocycle(T)
    emb = units_and_embedding(F, T.A)
    act = build_action(tc.pipeline.S, F)
    return act, tc, emb, build_crossed_product(act, cocycle_vectors(act, tc.pipeline.TA, tc.cocycle, emb))


def untwisted(G, F=F5):
    act = build_action(G, F)
    return act, build_crossed_product(act, trivial_cocycle_vectors(act))


def test_action_moves_values_along_arrow():
    act = build_action(fx.G4(), F5)
    BS = act.BS
    U = BS.of({fx.G4().index("(1,2)")})
    # units in order (1,1), (2,2): the value at unit 2 lands on unit 1
    assert act.alpha(U, (3, 4)) == (4, 0)


def test_idempotent_acts_by_indicator():
    act = build_action(fx.G4(), F5)
    for e in act.S.idempotents:
        assert act.alpha(e, (2, 3)) == act.mul((2, 3), act.one(e))


def test_unit_sheaf_sizes():
    assert unit_sheaf(build_action(fx.G2(), F5)).K.n == 5
    M2 = unit_sheaf(build_action(fx.G4(), PrimeField(2)))
    assert M2.K.n == 4 and len(M2.K.idempotents) == 4


def test_unit_sheaf_matches_tilde_of_embedded_z2():
    act = build_action(fx.G4(), F5)
    M, TA = module_tilde_A(act.BS, fx.Z2())
    assert check_embedded_module(act, M, TA, (1, 4))
    assert not check_embedded_module(act, M, TA, (1, 1))


def test_g1_is_one_dimensional():
    _, cp = untwisted(fx.G1())
    assert cp.dim == 1


def test_tw2_crossed_product_is_x2_plus_1():
    act, tc, emb, cp = twisted(fx.TW2())
    A = cp.algebra.in_basis(cp.arrow_basis())
    e, g = A.basis(0), A.basis(1)
    assert A.mul(g, g) == A.scale(4, e)
    # brute force over all 25 elements: F5[x]/(x^2+1) = F5 x F5 has exactly 4 idempotents
    elems = list(product(range(5), repeat=2))
    assert sum(1 for v in elems if A.mul(v, v) == v) == 4


def test_dimension_equals_arrows():
    for G in fx.groupoids().values():
        assert untwisted(G)[1].dim == G.n


def test_ambient_associativity_and_ideal():
    _, _, _, cp = twisted(fx.TW2())
    assert cp.check_ambient_associative()
    assert cp.verify()


def test_cap():
    act = build_action(fx.G4(), F5)
    with pytest.raises(SizeLimitExceeded):
        build_crossed_product(act, trivial_cocycle_vectors(act), cap=10)


def test_normal_form_examples():
    act, cp = untwisted(fx.G4())
    BS, G = act.BS, fx.G4()
    i = {n: G.index(n) for n in G.names}
    flip = BS.of({i["(1,2)"], i["(2,1)"]})
    # supp(a) = ran(U): unchanged
    v = cp.element(flip, (1, 2))
    assert normal_form(cp, v) == [((1, 2), flip)]
    # supp(a) strictly inside ran(U): restrict to the arrow ending at unit 1
    v = cp.element(flip, (3, 0))
    assert normal_form(cp, v) == [((3, 0), BS.of({i["(1,2)"]}))]
    # overlapping bisections split into atoms
    units = BS.of({i["(1,1)"], i["(2,2)"]})
    v = cp.amb_add(cp.element(units, (1, 1)), cp.element(BS.of({i["(1,1)"]}), (2, 0)))
    nf = normal_form(cp, v)
    assert sorted((BS.label(U), a) for a, U in nf) == sorted(
        [(frozenset({i["(1,1)"]}), (3, 0)), (frozenset({i["(2,2)"]}), (0, 1))]
    )


def test_tau_examples():
    act, cp = untwisted(fx.G2())
    g = act.BS.of({1})
    assert tau(cp, cp.reduce(cp.element(g, (1,)))) == (0,)
    assert check_tau_rho(cp) == []


def test_rho_of_one_is_unit_delta():
    act, cp = untwisted(fx.G4())
    units = act.BS.of(set(fx.G4().units))
    assert cp.rho((1, 1)) == cp.reduce(cp.element(units, (1, 1)))
    assert cp.rho((0, 0)) == cp.algebra.zero()


def test_canonical_pair_is_universal_identity():
    _, _, _, cp = twisted(fx.TW2())
    rho, psi = canonical_covariant(cp)
    pi = universal_extend(cp, cp.algebra, rho, psi)
    assert [tuple(r) for r in pi.matrix] == [tuple(cp.unit_coords(k)) for k in range(cp.dim)]


def test_flipped_cocycle_sign_breaks_c3():
    _, _, _, cp2 = twisted(fx.TW2())
    _, _, _, cp0 = twisted(fx.TW0())
    rho, psi = canonical_covariant(cp2)
    with pytest.raises(NotCovariant) as err:
        check_covariant(cp0, cp2.algebra, rho, psi)
    assert err.value.axiom == "C3"


def test_same_crossed_identity_witness():
    act, tc, emb, cp = twisted(fx.TW2())
    M, TA = tc.module, tc.pipeline.TA
    ident = [tilde_to_vector(F5, TA, f, emb) for f in M.identity_cochain()]
    fwd, bwd = same_crossed_iso(act, cp, cp, ident)
    assert [tuple(r) for r in fwd] == [tuple(cp.unit_coords(k)) for k in range(cp.dim)]


ACT1, TC1, EMB1, CP1 = twisted(fx.TW1())
COCHAINS1 = list(iter_cochains(TC1.module, normalized=True))


@given(st.integers(0, len(COCHAINS1) - 1))
@settings(max_examples=15, deadline=None)
def test_coboundary_perturbation_gives_isomorphic_crossed_product(j):
    M, TA = TC1.module, TC1.pipeline.TA
    Fc = COCHAINS1[j]
    c2 = M.pointwise(TC1.cocycle, coboundary(M, Fc))
    cp2 = build_crossed_product(ACT1, cocycle_vectors(ACT1, TA, c2, EMB1))
    same_crossed_iso(ACT1, CP1, cp2, [tilde_to_vector(F5, TA, f, EMB1) for f in Fc])


coords = st.lists(st.integers(0, 4), min_size=CP1.dim, max_size=CP1.dim)


@given(coords, coords, coords)
@settings(max_examples=40, deadline=None)
def test_ring_axioms_on_random_elements(u, v, w):
    A = CP1.algebra
    assert A.mul(A.mul(u, v), w) == A.mul(u, A.mul(v, w))
    assert A.mul(u, A.add(v, w)) == A.add(A.mul(u, v), A.mul(u, w))


@given(st.lists(st.integers(0, 4), min_size=CP1.amb_dim, max_size=CP1.amb_dim))
@settings(max_examples=30, deadline=None)
def test_normal_form_on_random_ambient_elements(v):
    nf = normal_form(CP1, tuple(v))  # raises if the result is not equivalent modulo I
    labels = [CP1.action.BS.label(U) for _, U in nf]
    assert all(not (a & b) for k, a in enumerate(labels) for b in labels[k + 1:])
