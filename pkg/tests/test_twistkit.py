import pytest

from ampletwist import fixtures as fx
from ampletwist.duality import gamma_c
from ampletwist.errors import ValidationError
from ampletwist.lausch import h2
from ampletwist.twistkit import (
    FiniteAbelianGroup,
    NotACocycle,
    baer_sum,
    central_witness,
    is_central,
    module_tilde_A,
    tilde_A,
    twist_class_cocycle,
    twist_from_class,
    twist_from_groupoid_cocycle,
    twists_equivalent,
)


def test_tilde_a_size():
    # (|A| + 1)^|G0|
    assert len(tilde_A(fx.G4(), fx.Z2()).values) == 9
    assert len(tilde_A(fx.G2(), FiniteAbelianGroup.cyclic(3)).values) == 4


def test_conjugation_on_g2_is_trivial():
    BS = gamma_c(fx.G2())
    M, TA = module_tilde_A(BS, fx.Z2())
    g = BS.semigroup.index("{g}")
    f = TA.constant(1)
    assert M.act[g][f] == f


def test_tw2_names_and_centrality():
    T = fx.TW2()
    assert T.Sigma.names == ("(1,e)", "(1,g)", "(a,e)", "(a,g)")
    assert is_central(T)


def test_noncentral_extension_detected():
    T = fx.noncentral_S3()
    w = central_witness(T)
    assert w is not None
    assert not is_central(T)
    with pytest.raises(ValidationError):
        twist_class_cocycle(T)


def test_non_cocycle_rejected():
    G, A = fx.G2(), fx.Z2()
    with pytest.raises(NotACocycle):
        twist_from_groupoid_cocycle(G, A, lambda g, h: 1 if (g, h) == (1, 0) else 0)


def test_classification_of_g2_twists():
    BS = gamma_c(fx.G2())
    M, TA = module_tilde_A(BS, fx.Z2())
    rep = h2(M)
    assert rep.class_index(twist_class_cocycle(fx.TW0(), S=BS).cocycle) == 0
    assert rep.class_index(twist_class_cocycle(fx.TW2(), S=BS).cocycle) == 1
    realized = [twist_from_class(M, c, BS, TA) for c in rep.representatives]
    assert [T.Sigma.n for T in realized] == [4, 4]
    assert twists_equivalent(realized[0], realized[1]) is None
    assert twists_equivalent(realized[1], fx.TW2()) is not None


def test_baer_sums():
    assert twists_equivalent(baer_sum(fx.TW2(), fx.TW2()), fx.TW0()) is not None
    assert twists_equivalent(baer_sum(fx.TW0(), fx.TW2()), fx.TW2()) is not None
    assert twists_equivalent(baer_sum(fx.TW0(), fx.TW0()), fx.TW0()) is not None


def test_baer_sum_associative_up_to_equivalence():
    a, b = fx.TW2(), fx.TW0()
    left = baer_sum(baer_sum(a, a), b)
    right = baer_sum(a, baer_sum(a, b))
    assert twists_equivalent(left, right) is not None


def test_tw1_class_is_trivial():
    BS = gamma_c(fx.G4())
    M, _ = module_tilde_A(BS, fx.Z2())
    rep = h2(M)
    assert rep.order == 1
    assert rep.class_index(twist_class_cocycle(fx.TW1(), S=BS).cocycle) == 0
