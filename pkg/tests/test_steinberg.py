import pytest
from hypothesis import given, settings, strategies as st

from ampletwist import fixtures as fx
from ampletwist.crossed import groupoid_algebra
from ampletwist.duality import gamma_c
from ampletwist.errors import NotIso
from ampletwist.ringkit import PrimeField, Rationals
from ampletwist.steinberg import NoEmbedding, NotABisection, build_steinberg, check_universality, iso_psi
from ampletwist.acceptance import crossed_and_steinberg
from ampletwist.twistkit import FiniteAbelianGroup, trivial_twist, twist_class_cocycle

F5 = PrimeField(5)


def test_trivial_twist_gives_group_algebra():
    alg = build_steinberg(fx.TW0(), F5)
    assert alg.algebra.mult == groupoid_algebra(fx.G2(), F5).mult


def test_tw2_convolution():
    alg = build_steinberg(fx.TW2(), F5, (1, 4))
    e, g = alg.algebra.basis(0), alg.algebra.basis(1)
    assert alg.mul(g, g) == alg.algebra.scale(4, e)


def test_g4_is_matrix_algebra():
    alg = build_steinberg(fx.TW1(), F5)
    assert alg.algebra.mult == groupoid_algebra(fx.G4(), F5).mult
    # matrix units: E_ij E_jk = E_ik
    G = fx.G4()
    i12, i21, i11 = G.index("(1,2)"), G.index("(2,1)"), G.index("(1,1)")
    assert alg.mul(alg.algebra.basis(i12), alg.algebra.basis(i21)) == alg.algebra.basis(i11)


def test_no_embedding():
    T = trivial_twist(fx.G2(), FiniteAbelianGroup.cyclic(3))
    with pytest.raises(NoEmbedding):
        build_steinberg(T, Rationals())


def test_tilde_one_examples():
    T = fx.TW2()
    alg = build_steinberg(T, F5)
    assert alg.tilde_one({T.Sigma.units[0]}) == (1, 0)
    assert alg.tilde_one({alg.section[1]}) == (0, 1)
    with pytest.raises(NotABisection):
        alg.tilde_one({0, 1})
    for tw in (fx.TW0(), fx.TW1(), fx.TW2()):
        assert build_steinberg(tw, F5).tilde_one_rank() == tw.G.n


@pytest.mark.parametrize("name", ["TW0", "TW1", "TW2"])
def test_section_independence(name):
    T = getattr(fx, name)()
    alg = build_steinberg(T, F5)
    other = build_steinberg(T, F5, section=alg.second_section())
    # same algebra, expressed on a different section: full functions must agree
    for g in range(T.G.n):
        for h in range(T.G.n):
            f = alg.convolve_full(alg.basis_full(g), alg.basis_full(h))
            f2 = other.convolve_full(alg.basis_full(g), alg.basis_full(h))
            assert f == f2


@pytest.mark.parametrize("T", [fx.trivial_twist_G1(), fx.TW0(), fx.TW2(), fx.TW1()])
@pytest.mark.parametrize("F", [F5, Rationals()])
def test_iso_psi(T, F):
    cp, alg, iso = crossed_and_steinberg(T, F)
    assert cp.dim == alg.dim == T.G.n
    assert check_universality(cp, alg, iso)


def test_iso_psi_detects_wrong_section():
    T = fx.TW1()
    tc = twist_class_cocycle(T)
    cp, alg, _ = crossed_and_steinberg(T, F5)
    # a section that differs on one non-unit bisection by the nontrivial a
    TB = tc.pipeline.T
    S = tc.pipeline.S
    j = list(tc.section)
    s = next(s for s in range(S.n) if len(S.label(s)) == 1 and not S.label(s) <= set(T.G.units))
    img = TB.label(j[s])
    moved = {T.a_action[1][x] for x in img}
    j[s] = TB.of(moved)
    with pytest.raises(NotIso):
        iso_psi(cp, alg, tuple(j), TB)


ALG = build_steinberg(fx.TW1(), F5)
vals = st.lists(st.integers(0, 4), min_size=ALG.dim, max_size=ALG.dim)


@given(vals, vals)
@settings(max_examples=40, deadline=None)
def test_convolution_preserves_anti_equivariance(u, v):
    f = ALG.convolve_full(ALG.full(u), ALG.full(v))
    assert ALG.is_anti_equivariant(f)
    assert ALG.values(f) == ALG.mul(u, v)
